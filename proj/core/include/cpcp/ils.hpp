#pragma once

#include <cstdint>
#include <vector>

#include "cpcp/instance.hpp"

namespace cpcp {

struct HeuristicSolution {
  std::vector<int> open_set;     // sorted facility indices
  std::vector<int> assignment;   // customer -> facility, total
  std::vector<Units> excess;     // per facility, max(0, load - Q_i)
  Distance radius = 0.0;         // largest true assignment distance
  double penalized_cost = 0.0;   // max over customers of d_ij + M * excess_i

  bool feasible() const;
};

// Penalty weight M = 1 + max d_ij * (1 + sum q_j); with it any feasible
// solution has a smaller penalized cost than any infeasible one.
double penalty_weight(const Instance& instance);

// Opens facilities one at a time (minimum of max_{unassigned} d_ij / Q_i),
// each taking its closest unassigned customers until one does not fit.
// Leftovers go to their closest open facility.
HeuristicSolution construct_initial(const Instance& instance);

struct IlsOptions {
  int rounds = 300;  // local-search descents
  std::uint64_t seed = 1;
};

// Iterated local search on the worst penalized assignment with Cust-Swap,
// Relocate and Fac-Swap moves and a facility-exchange perturbation. Returns
// the best feasible solution found, or the best penalized one.
HeuristicSolution run_ils(const Instance& instance,
                          const IlsOptions& options = {});

// Recomputes excess, radius and penalized cost from open_set/assignment.
void evaluate(const Instance& instance, HeuristicSolution& solution);

}  // namespace cpcp
