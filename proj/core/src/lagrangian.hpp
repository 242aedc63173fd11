#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpcp/coverage.hpp"

namespace cpcp::detail {

// Lagrangian relaxation of the covering rows of the set-covering subproblem.
// For multipliers u >= 0 and facility states (+1 open, -1 closed, 0 free),
//   L(u) = sum_j u_j + sum_open (1 - K_i(u)) + sum_free min(0, 1 - K_i(u))
// where K_i(u) is the best value of a 0-1 knapsack over C_i^r with weights
// q_j and capacity Q_i. Every u gives a lower bound on the number of open
// facilities in any cover consistent with the states.
//
// Rows over the y variables alone (sum a_i y_i >= b) can be added; they are
// dualized as well, each multiplier w adding w b to the bound and w a_i to
// the gain of facility i.
struct FacilityRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

class LagrangianBound {
 public:
  LagrangianBound(const CoverageContext& ctx, std::vector<FacilityRow> rows);

  // Subgradient steps (Polyak rule toward `target`) from the current
  // multipliers; stops once the bound exceeds `stop_above`. Keeps the best
  // multipliers for the next call and returns the best bound.
  double improve(std::span<const signed char> status, int iterations,
                 double target, double stop_above);

  // K_i plus the row multipliers on y_i, at the multipliers of the last
  // returned bound. Opening i costs 1 - gain(i) in the bound.
  double gain(int i) const { return best_value_[i]; }

  // Share of the last call's iterations in which facility i was worth
  // opening; an estimate of its value in the convexified relaxation.
  double activity(int i) const { return activity_[i]; }

 private:
  double evaluate(std::span<const signed char> status);
  double knapsack(int i);

  const CoverageContext& ctx_;
  std::vector<FacilityRow> rows_;
  std::vector<double> u_;
  std::vector<double> best_u_;
  std::vector<double> w_;
  std::vector<double> best_w_;
  std::vector<double> row_gradient_;
  std::vector<double> value_;       // gain at (u_, w_)
  std::vector<double> best_value_;  // gain at (best_u_, best_w_)
  // Per facility, the customers taken by the last knapsack (fractional
  // weights when the capacity is too large for the table).
  std::vector<std::vector<std::pair<int, double>>> taken_;
  std::vector<double> table_;
  std::vector<std::uint64_t> bits_;
  std::vector<double> subgradient_;
  std::vector<double> activity_;
};

}  // namespace cpcp::detail
