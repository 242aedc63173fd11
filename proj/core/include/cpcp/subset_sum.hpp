#pragma once

#include <span>
#include <vector>

#include "cpcp/coverage.hpp"

namespace cpcp {

// Largest subset sum of `weights` not exceeding `cap`; 0 for empty weights
// or cap <= 0. Boolean reachability DP over 0..cap.
Units max_subset_sum(std::span<const Units> weights, Units cap);

// Q'_i: the largest load facility i can actually reach with the customers
// it covers.
Units tightened_capacity(const CoverageContext& ctx, int i);

// beta0: best load of i from C_i^r \ {k} within Q_i (k not served).
// beta1: best load of i from C_i^r \ {k} within Q_i - q_k (k served).
struct BetaPair {
  Units excluded = 0;  // beta0
  Units included = 0;  // beta1
};

// Requires k in C_i^r; throws ContractViolation otherwise.
BetaPair beta_pair(const CoverageContext& ctx, int i, int k);

// All Q'_i of a context, one DP per facility.
std::vector<Units> tightened_capacities(const CoverageContext& ctx);

}  // namespace cpcp
