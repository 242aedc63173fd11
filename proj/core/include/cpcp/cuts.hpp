#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpcp/coverage.hpp"

namespace cpcp {

// Decision variable of the set-covering subproblem: y_i (facility open) or
// x_ij (customer j served by facility i). Indices are 0-based.
struct Variable {
  enum class Kind : std::uint8_t { kOpen, kAssign };

  Kind kind = Kind::kOpen;
  int facility = 0;
  int customer = -1;

  static Variable y(int i) { return {Kind::kOpen, i, -1}; }
  static Variable x(int i, int j) { return {Kind::kAssign, i, j}; }

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// "y_3", "x_2_5" with 1-based indices.
std::string variable_name(const Variable& v);

enum class Sense { kLessEqual, kGreaterEqual, kEqual };
std::string_view to_string(Sense sense);

enum class CutKind {
  kLinking,          // x_ij <= y_i
  kDomination,       // y_i2 <= y_i1
  kForcing,          // x_ij >= y_i when delta_i <= Q_i
  kSurplus,          // x_ik >= y_i - sum_{C_i \ S} x_ij
  kSymmetry,         // x_{i1 j2} + x_{i2 j1} <= 1
  kCapacity,         // sum ceil(Q_k / gamma) y_k >= ceil(q(S) / gamma)
  kSspCapacity,      // sum q_j x_ij <= Q'_i y_i
  kSspDemand,        // sum_{j != k} q_j x_ij + (Q_i - beta1) x_ik <= Q_i y_i
  kDisjunctiveSsp,   // sum_{j != k} q_j x_ij <= beta0 y_i - (beta0 - beta1) x_ik
};

std::string_view to_string(CutKind kind);

struct Term {
  Variable var;
  std::int64_t coef = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

// Generating tuple of a cut: facility indices, customer indices, S, gamma.
struct CutOrigin {
  int facility = -1;
  int other_facility = -1;
  int customer = -1;
  int other_customer = -1;
  std::vector<int> subset;
  std::int64_t gamma = 0;
};

// Linear inequality with every variable on the left-hand side. Terms are
// kept sorted by variable with non-zero coefficients.
struct LinearCut {
  CutKind kind = CutKind::kLinking;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  std::int64_t rhs = 0;
  CutOrigin origin;

  bool mentions(const Variable& v) const;
  // Evaluates the cut on a point given as a callable Variable -> value.
  template <typename Point>
  bool satisfied_by(const Point& value) const {
    std::int64_t lhs = 0;
    for (const Term& t : terms) lhs += t.coef * value(t.var);
    switch (sense) {
      case Sense::kLessEqual:
        return lhs <= rhs;
      case Sense::kGreaterEqual:
        return lhs >= rhs;
      case Sense::kEqual:
        return lhs == rhs;
    }
    return false;
  }
};

// Builds a cut from unsorted terms, merging duplicates and dropping zeros.
LinearCut make_cut(CutKind kind, std::vector<Term> terms, Sense sense,
                   std::int64_t rhs, CutOrigin origin = {});

// Same inequality (terms, sense, rhs); origin and kind are ignored.
bool same_inequality(const LinearCut& a, const LinearCut& b);

// Human-readable form, e.g. "3 x_1_1 + 5 x_1_2 - 10 y_1 <= 0".
std::string to_string(const LinearCut& cut);

struct CutSet {
  std::vector<LinearCut> cuts;

  std::size_t count(CutKind kind) const;
};

// Subset enumeration policy for surplus-demand cuts.
struct SurplusPolicy {
  int min_size = 1;
  int max_size = 3;
  std::size_t max_cuts_per_facility = 5000;
};

struct CutOptions {
  SurplusPolicy surplus;
  // Keep capacity cuts with rhs <= 1 and subset-sum cuts that do not improve
  // on the base capacity row.
  bool keep_dominated = false;
};

// Ordered pairs (i1, i2), i1 != i2, with C_i2 within C_i1 and
// Q_i1 >= kappa_i2. When both facilities dominate each other only the pair
// with i1 < i2 is reported, so the induced y_i2 <= y_i1 rows never force two
// interchangeable facilities to open together.
std::vector<std::pair<int, int>> domination_pairs(const CoverageContext& ctx);

std::vector<LinearCut> linking_cuts(const CoverageContext& ctx);
std::vector<LinearCut> domination_cuts(const CoverageContext& ctx);
std::vector<LinearCut> forcing_cuts(const CoverageContext& ctx);
std::vector<LinearCut> surplus_cuts(const CoverageContext& ctx,
                                    const SurplusPolicy& policy = {});
std::vector<LinearCut> symmetry_cuts(const CoverageContext& ctx);
std::vector<LinearCut> capacity_cuts(const CoverageContext& ctx,
                                     bool keep_dominated = false);
// Subset-sum capacity row per facility and demand row per covered pair.
std::vector<LinearCut> ssp_cuts(const CoverageContext& ctx,
                                bool keep_dominated = false);
std::vector<LinearCut> disjunctive_ssp_cuts(const CoverageContext& ctx,
                                            bool keep_dominated = false);

// Drops every forcing/surplus cut that shares a variable with a symmetry cut.
CutSet resolve_conflicts(CutSet set);

// Every family followed by resolve_conflicts.
CutSet generate_cuts(const CoverageContext& ctx, const CutOptions& options = {});

}  // namespace cpcp
