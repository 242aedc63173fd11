#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpcp/cscp_oracle.hpp"
#include "cpcp/radius_ladder.hpp"

namespace cpcp {

enum class StrategyKind { kSequential, kBinary, kLayered };

struct Strategy {
  StrategyKind kind = StrategyKind::kSequential;
  int layers = 1;  // used by kLayered

  static Strategy sequential() { return {StrategyKind::kSequential, 1}; }
  static Strategy binary() { return {StrategyKind::kBinary, 0}; }
  static Strategy layered(int layers) {
    return {StrategyKind::kLayered, layers};
  }

  // "ss", "bs", "l2", "l3", ... ("l1" is accepted and is sequential order).
  static std::optional<Strategy> parse(std::string_view token);
  std::string name() const;  // "SS", "BS", "L3"
};

// ceil(n^((layers - 1) / layers)) in exact integer arithmetic.
std::uint64_t layered_delta(std::uint64_t n, int layers);

struct SearchStats {
  std::uint64_t probes = 0;
  std::uint64_t feasible = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t timed_out = 0;
  double seconds = 0.0;
};

// Bracket over ladder indices: i_low is proven infeasible (or the 0
// sentinel), i_up is proven feasible.
struct SearchState {
  std::size_t i_low = 0;
  std::size_t i_up = 0;
  int layers = 0;
  SearchStats stats;
  // Every probe in order, when tracing is enabled.
  std::vector<std::pair<std::size_t, OracleStatus>> trace;
};

struct SearchOutcome {
  SearchState state;
  bool complete = false;  // i_up == i_low + 1

  std::size_t optimal_index() const { return state.i_up; }
};

using ProbeFn = std::function<OracleStatus(std::size_t index)>;

struct SearchOptions {
  bool trace = false;
};

// Locates the smallest feasible index in (i_low, i_up] by the given
// strategy. The oracle must be monotone; i_up must be feasible. Every probe
// lies strictly inside the current bracket, so answers can never contradict
// earlier ones. Stops at the first TimedOut probe and returns the current
// bracket.
SearchOutcome run_search(const Strategy& strategy, const ProbeFn& probe,
                         std::size_t i_low, std::size_t i_up,
                         const SearchOptions& options = {});

}  // namespace cpcp
