#include "cpcp/solver.hpp"

#include "cpcp/coverage.hpp"
#include "cpcp/cscp_oracle.hpp"
#include "cpcp/ils.hpp"

namespace cpcp {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "opt";
    case SolveStatus::kGap:
      return "gap";
    case SolveStatus::kInfeasibleModel:
      return "infeasible-model";
  }
  return "unknown";
}

std::optional<double> SolveReport::gap_pct() const {
  if (!ub) return std::nullopt;
  if (status == SolveStatus::kOptimal || *ub == 0.0) return 0.0;
  return 100.0 * (*ub - lb) / *ub;
}

namespace {

using Clock = std::chrono::steady_clock;

class Prober {
 public:
  Prober(const Instance& inst, const RadiusLadder& ladder,
         const SolveOptions& options)
      : inst_(inst),
        ladder_(ladder),
        options_(options),
        deadline_(Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(options.time_limit)) {}

  OracleStatus operator()(std::size_t k) {
    const CoverageContext ctx(inst_, ladder_[k]);
    if (probe_infeasible(ctx, inst_.p())) return OracleStatus::kInfeasible;
    const auto left = deadline_ - Clock::now();
    if (left <= Clock::duration::zero()) return OracleStatus::kTimedOut;
    SearchBudget budget;
    budget.time_limit = std::chrono::duration<double>(left);
    budget.node_limit = options_.node_limit;
    OracleResult result = solve_cscp(ctx, inst_.p(), budget);
    if (result.status == OracleStatus::kFeasible &&
        (!witness_index_ || k < *witness_index_)) {
      witness_index_ = k;
      witness_ = Witness{*result.open_set, *result.assignment};
    }
    return result.status;
  }

  void offer(std::size_t k, Witness w) {
    if (!witness_index_ || k < *witness_index_) {
      witness_index_ = k;
      witness_ = std::move(w);
    }
  }

  std::optional<Witness> witness_at(std::size_t k) const {
    if (witness_index_ == k) return witness_;
    return std::nullopt;
  }

 private:
  const Instance& inst_;
  const RadiusLadder& ladder_;
  const SolveOptions& options_;
  const Clock::time_point deadline_;
  std::optional<std::size_t> witness_index_;
  std::optional<Witness> witness_;
};

}  // namespace

SolveReport solve_cpcp(const Instance& inst, const SolveOptions& options) {
  const auto start = Clock::now();
  SolveReport report;
  const RadiusLadder ladder(inst);
  report.ladder_size = ladder.size();
  Prober prober(inst, ladder, options);
  auto finish = [&] {
    report.seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  };

  std::size_t i_up = ladder.size();
  const HeuristicSolution heuristic =
      run_ils(inst, IlsOptions{options.ils_rounds, options.seed});
  if (heuristic.feasible() &&
      static_cast<int>(heuristic.open_set.size()) <= inst.p()) {
    report.heuristic_ub = heuristic.radius;
    i_up = *ladder.index_of(heuristic.radius);
    prober.offer(i_up, Witness{heuristic.open_set, heuristic.assignment});
  } else {
    const OracleStatus top = prober(i_up);
    if (top == OracleStatus::kInfeasible) {
      report.status = SolveStatus::kInfeasibleModel;
      report.lb = ladder[ladder.size()];
      return finish();
    }
    if (top == OracleStatus::kTimedOut) {
      report.status = SolveStatus::kGap;
      report.lb = ladder[1];
      return finish();
    }
  }

  std::size_t i_low = 0;
  if (options.lower_bound) {
    const std::size_t k = ladder.floor_index(*options.lower_bound);
    if (k >= 1 && k < i_up) {
      const OracleStatus s = prober(k);
      if (s == OracleStatus::kInfeasible) {
        i_low = k;
      } else if (s == OracleStatus::kFeasible) {
        i_up = k;
      }
    }
  }

  const SearchOutcome outcome = run_search(
      options.strategy, [&](std::size_t k) { return prober(k); }, i_low, i_up);
  report.search = outcome.state;
  report.lb = ladder[outcome.state.i_low + 1];
  report.ub = ladder[outcome.state.i_up];
  report.witness = prober.witness_at(outcome.state.i_up);
  report.status = outcome.complete ? SolveStatus::kOptimal : SolveStatus::kGap;
  return finish();
}

}  // namespace cpcp
