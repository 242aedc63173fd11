#include "cpcp/radius_search.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>

namespace cpcp {

std::optional<Strategy> Strategy::parse(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "ss" || t == "sequential") return sequential();
  if (t == "bs" || t == "binary") return binary();
  if (t.size() >= 2 && t[0] == 'l') {
    int layers = 0;
    auto [ptr, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), layers);
    if (ec == std::errc() && ptr == t.data() + t.size() && layers >= 1 &&
        layers <= 64) {
      return layered(layers);
    }
  }
  return std::nullopt;
}

std::string Strategy::name() const {
  switch (kind) {
    case StrategyKind::kSequential:
      return "SS";
    case StrategyKind::kBinary:
      return "BS";
    case StrategyKind::kLayered:
      return "L" + std::to_string(layers);
  }
  return "?";
}

namespace {

// Unsigned big integer, little-endian 32-bit limbs. Only what the exact
// root comparison needs.
using Big = std::vector<std::uint32_t>;

Big to_big(std::uint64_t v) {
  Big out;
  while (v) {
    out.push_back(static_cast<std::uint32_t>(v));
    v >>= 32;
  }
  return out;
}

Big multiply(const Big& a, const Big& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t cur =
          acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      acc[i + j] = cur & 0xffffffffu;
      carry = cur >> 32;
    }
    for (std::size_t k = i + b.size(); carry; ++k) {
      const std::uint64_t cur = acc[k] + carry;
      acc[k] = cur & 0xffffffffu;
      carry = cur >> 32;
    }
  }
  Big out(acc.begin(), acc.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Big power(std::uint64_t base, int exp) {
  Big result = to_big(1);
  const Big b = to_big(base);
  for (int e = 0; e < exp; ++e) result = multiply(result, b);
  return result;
}

int compare(const Big& a, const Big& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

}  // namespace

std::uint64_t layered_delta(std::uint64_t n, int layers) {
  if (layers <= 1 || n <= 1) return 1;
  // Smallest d with d^L >= n^(L-1); it lies in [1, n].
  const Big target = power(n, layers - 1);
  std::uint64_t lo = 1;
  std::uint64_t hi = n;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (compare(power(mid, layers), target) >= 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

namespace {

class Runner {
 public:
  Runner(const ProbeFn& probe, std::size_t i_low, std::size_t i_up,
         const SearchOptions& options)
      : probe_(probe), options_(options) {
    state_.i_low = i_low;
    state_.i_up = i_up;
  }

  void sequential() { layered(1, state_.i_low, state_.i_up); }

  void binary() {
    while (!stopped_ && state_.i_up > state_.i_low + 1) {
      const std::size_t mid = (state_.i_low + state_.i_up) / 2;
      query(mid);
    }
  }

  void layered(int layers, std::size_t low, std::size_t up) {
    if (stopped_ || up <= low + 1) return;
    const std::uint64_t delta =
        layered_delta(static_cast<std::uint64_t>(up - low - 1), layers);
    std::size_t i = low;
    bool feasible = false;
    while (!feasible && i + delta < up) {
      i += delta;
      const auto answer = query(i);
      if (!answer) return;
      feasible = *answer;
    }
    if (feasible) {
      layered(layers - 1, i - delta, i);
    } else {
      layered(layers - 1, i, up);
    }
  }

  SearchOutcome finish(int layers, double seconds) {
    SearchOutcome out;
    state_.layers = layers;
    state_.stats.seconds = seconds;
    out.complete = !stopped_ && state_.i_up == state_.i_low + 1;
    out.state = std::move(state_);
    return out;
  }

 private:
  // nullopt when the search has to stop.
  std::optional<bool> query(std::size_t k) {
    const OracleStatus status = probe_(k);
    SearchStats& s = state_.stats;
    ++s.probes;
    if (options_.trace) state_.trace.emplace_back(k, status);
    switch (status) {
      case OracleStatus::kTimedOut:
        ++s.timed_out;
        stopped_ = true;
        return std::nullopt;
      case OracleStatus::kFeasible:
        ++s.feasible;
        if (k < state_.i_up) state_.i_up = k;
        break;
      case OracleStatus::kInfeasible:
        ++s.infeasible;
        if (k > state_.i_low) state_.i_low = k;
        break;
    }
    return status == OracleStatus::kFeasible;
  }

  const ProbeFn& probe_;
  SearchOptions options_;
  SearchState state_;
  bool stopped_ = false;
};

}  // namespace

SearchOutcome run_search(const Strategy& strategy, const ProbeFn& probe,
                         std::size_t i_low, std::size_t i_up,
                         const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Runner runner(probe, i_low, i_up, options);
  int layers = 0;
  switch (strategy.kind) {
    case StrategyKind::kSequential:
      layers = 1;
      runner.sequential();
      break;
    case StrategyKind::kBinary:
      runner.binary();
      break;
    case StrategyKind::kLayered:
      layers = std::max(strategy.layers, 1);
      runner.layered(layers, i_low, i_up);
      break;
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return runner.finish(layers, elapsed.count());
}

}  // namespace cpcp
