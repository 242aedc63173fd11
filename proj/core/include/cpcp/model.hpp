#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpcp/cuts.hpp"
#include "cpcp/instance.hpp"

namespace cpcp {

enum class VarType { kContinuous, kBinary, kInteger };

struct ModelVariable {
  std::string name;
  VarType type = VarType::kBinary;
  double lower = 0.0;
  double upper = 1.0;
};

struct ModelRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// A MILP in solver-neutral form, serializable to the LP text format.
class ModelDocument {
 public:
  bool minimize = true;
  std::vector<std::pair<int, double>> objective;
  std::vector<ModelRow> rows;
  std::vector<ModelVariable> variables;
  std::vector<std::string> comments;
  // Set when some row can never be satisfied (e.g. a customer nobody
  // covers, emitted as "0 >= 1").
  bool trivially_infeasible = false;

  // Returns the index of `name`, declaring it on first use.
  int variable(const std::string& name, VarType type = VarType::kBinary,
               double lower = 0.0, double upper = 1.0);
  int find_variable(std::string_view name) const;  // -1 when absent

  ModelRow& add_row(std::string name, Sense sense, double rhs);
  void add_term(ModelRow& row, const std::string& var, double coef);

  const ModelRow* find_row(std::string_view name) const;
  std::size_t count_rows_with_prefix(std::string_view prefix) const;

 private:
  std::map<std::string, int, std::less<>> index_;
};

// LP-format writer and a reader for the subset the writer produces.
std::string write_lp(const ModelDocument& doc);
ModelDocument read_lp(std::string_view text);

// Rows compared by name, terms by variable name; variable declarations by
// name, type and bounds.
bool equivalent(const ModelDocument& a, const ModelDocument& b);

// Converts a cut into a named row of `doc`.
void add_cut_row(ModelDocument& doc, const LinearCut& cut, std::string name);

enum class CscpVariant { kPlain, kFull };

// Descriptive CPCP model: assignment equalities, the cardinality row,
// distance rows z >= sum d_ij x_ij and capacity rows.
ModelDocument emit_cpcp_descriptive(const Instance& instance);

// Set-covering subproblem at radius r (which must be a ladder value).
// kPlain: covering rows (>=) and capacity rows over covered pairs.
// kFull: plain plus every inequality family after conflict resolution.
ModelDocument emit_cscp(const Instance& instance, Distance r,
                        CscpVariant variant, const CutOptions& options = {});

// Arc-flow variant: per-facility flow conservation, arc/assignment linking
// and covering rows.
ModelDocument emit_cscp_arcflow(const Instance& instance, Distance r);

}  // namespace cpcp
