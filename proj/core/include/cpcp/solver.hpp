#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cpcp/instance.hpp"
#include "cpcp/radius_search.hpp"

namespace cpcp {

enum class SolveStatus { kOptimal, kGap, kInfeasibleModel };
std::string_view to_string(SolveStatus status);  // "opt", "gap", "infeasible-model"

struct SolveOptions {
  Strategy strategy = Strategy::layered(3);
  std::chrono::duration<double> time_limit{600.0};
  std::optional<std::uint64_t> node_limit;  // per oracle call
  int ils_rounds = 300;
  std::uint64_t seed = 1;
  // Radius known to be infeasible; the search starts above it.
  std::optional<Distance> lower_bound;
};

struct Witness {
  std::vector<int> open_set;
  std::vector<int> assignment;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kGap;
  // Radius bracket [LB, UB]; UB unset when no feasible radius is known.
  Distance lb = 0.0;
  std::optional<Distance> ub;
  std::optional<Distance> heuristic_ub;
  std::optional<Witness> witness;
  SearchState search;
  std::size_t ladder_size = 0;
  double seconds = 0.0;

  // 100 (UB - LB) / UB; 0 when optimal or UB == 0, unset without UB.
  std::optional<double> gap_pct() const;
};

// Upper bound from the ILS, then a radius search over [sentinel, UB] with
// the CSCP oracle (after the cheap infeasibility probe) at each radius.
SolveReport solve_cpcp(const Instance& instance, const SolveOptions& options);

}  // namespace cpcp
