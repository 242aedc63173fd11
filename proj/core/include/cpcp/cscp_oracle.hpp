#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cpcp/coverage.hpp"

namespace cpcp {

enum class OracleStatus { kFeasible, kInfeasible, kTimedOut };
std::string_view to_string(OracleStatus status);

// Limits for one oracle call; an unset field means unlimited.
struct SearchBudget {
  std::optional<std::chrono::duration<double>> time_limit;
  std::optional<std::uint64_t> node_limit;

  static SearchBudget unlimited() { return {}; }
};

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  // Set only when feasible: customer -> facility, and the open facilities.
  std::optional<std::vector<int>> assignment;
  std::optional<std::vector<int>> open_set;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
};

// True when the p largest kappa_i sum to less than the total demand, which
// certifies infeasibility without search.
bool probe_infeasible(const CoverageContext& ctx, int p);

// Decides whether at most p facilities can serve every customer within the
// context's radius. Branches on facility opening and then on customer
// assignment. Facility nodes are pruned by a max-flow relaxation, the
// capacity inequalities, a Lagrangian bound on the facilities still needed
// (with reduced-cost fixing) and domination rules. Deterministic.
OracleResult solve_cscp(const CoverageContext& ctx, int p,
                        const SearchBudget& budget = {});

}  // namespace cpcp
