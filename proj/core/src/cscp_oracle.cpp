#include "cpcp/cscp_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cpcp/cuts.hpp"
#include "cpcp/max_flow.hpp"
#include "cpcp/subset_sum.hpp"
#include "lagrangian.hpp"

namespace cpcp {

std::string_view to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::kFeasible:
      return "feasible";
    case OracleStatus::kInfeasible:
      return "infeasible";
    case OracleStatus::kTimedOut:
      return "timeout";
  }
  return "unknown";
}

bool probe_infeasible(const CoverageContext& ctx, int p) {
  std::vector<Units> kappa(ctx.num_facilities());
  for (int i = 0; i < ctx.num_facilities(); ++i) kappa[i] = ctx.kappa(i);
  const std::size_t take =
      std::min<std::size_t>(kappa.size(), static_cast<std::size_t>(std::max(p, 0)));
  std::partial_sort(kappa.begin(), kappa.begin() + take, kappa.end(),
                    std::greater<>());
  const Units best = std::accumulate(kappa.begin(), kappa.begin() + take,
                                     Units{0});
  return best < ctx.total_demand();
}

namespace {

using Clock = std::chrono::steady_clock;

struct TimedOut {};

constexpr signed char kUndecided = 0;
constexpr signed char kOpen = 1;
constexpr signed char kClosed = -1;

constexpr int kRootIterations = 300;
constexpr int kNodeIterations = 25;
// Margin for the floating-point Lagrangian bound before it counts as > p.
constexpr double kBoundSlack = 1e-6;
// Facilities active in fewer than this share of the iterations (or more than
// one minus it) count as decided by the relaxation.
constexpr double kSplitThreshold = 0.1;
constexpr std::uint64_t kFirstAssignBudget = 200;
// Residual capacities above this skip the subset-sum tightening.
constexpr Units kMaxSubsetTable = 1 << 14;

// y-only capacity inequality, kept sparse.
struct CoverCut {
  std::vector<std::pair<int, std::int64_t>> terms;
  std::int64_t rhs;
};

std::vector<detail::FacilityRow> facility_rows(const CoverageContext& ctx) {
  std::vector<detail::FacilityRow> rows;
  for (const LinearCut& cut : capacity_cuts(ctx)) {
    detail::FacilityRow row;
    row.rhs = static_cast<double>(cut.rhs);
    for (const Term& t : cut.terms) {
      row.terms.emplace_back(t.var.facility, static_cast<double>(t.coef));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

class Search {
 public:
  Search(const CoverageContext& ctx, int p, const SearchBudget& budget)
      : ctx_(ctx),
        p_(p),
        budget_(budget),
        start_(Clock::now()),
        m_(ctx.num_facilities()),
        n_(ctx.num_customers()),
        total_(ctx.total_demand()),
        status_(m_, kUndecided),
        lagrangian_(ctx, facility_rows(ctx)) {}

  OracleResult run() {
    OracleResult result;
    try {
      result.status = solve() ? OracleStatus::kFeasible
                              : OracleStatus::kInfeasible;
    } catch (const TimedOut&) {
      result.status = OracleStatus::kTimedOut;
    }
    if (result.status == OracleStatus::kFeasible) {
      result.assignment = assignment_;
      std::vector<int> open;
      for (int i = 0; i < m_; ++i) {
        if (status_[i] == kOpen) open.push_back(i);
      }
      result.open_set = std::move(open);
    }
    result.nodes_explored = nodes_;
    result.elapsed = Clock::now() - start_;
    return result;
  }

 private:
  bool solve() {
    for (int j = 0; j < n_; ++j) {
      if (ctx_.facilities_of(j).empty()) return false;
    }
    if (p_ <= 0) return n_ == 0;
    if (probe_infeasible(ctx_, p_)) return false;
    prepare();
    // Packing searches that exceed their budget leave the open set
    // undecided; the facility search then runs again with a larger budget.
    for (assign_budget_ = kFirstAssignBudget;; assign_budget_ *= 4) {
      undecided_packing_ = false;
      if (facility_dfs()) return true;
      if (!undecided_packing_) return false;
      undo(0);
    }
  }

  void prepare() {
    tight_ = tightened_capacities(ctx_);
    dominators_.assign(m_, {});
    dominated_.assign(m_, {});
    std::vector<std::vector<int>> up(m_);
    std::vector<std::vector<int>> down(m_);
    for (auto [i1, i2] : domination_pairs(ctx_)) {
      up[i2].push_back(i1);
      down[i1].push_back(i2);
    }
    auto closure = [&](const std::vector<std::vector<int>>& adj, int from) {
      std::vector<char> seen(m_, 0);
      std::vector<int> stack{from};
      std::vector<int> out;
      seen[from] = 1;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
          if (seen[v]) continue;
          seen[v] = 1;
          out.push_back(v);
          stack.push_back(v);
        }
      }
      return out;
    };
    for (int i = 0; i < m_; ++i) {
      dominators_[i] = closure(up, i);
      dominated_[i] = closure(down, i);
    }

    // Node layout: source 0, sink 1, customers, facilities.
    base_.reset(2 + n_ + m_);
    for (int j = 0; j < n_; ++j) base_.add_edge(0, 2 + j, ctx_.demand(j));
    for (int i = 0; i < m_; ++i) {
      for (int j : ctx_.customers_of(i)) {
        base_.add_edge(2 + j, 2 + n_ + i, ctx_.demand(j));
      }
    }
    sink_edge_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      sink_edge_[i] = base_.add_edge(2 + n_ + i, 1, 0);
    }

    for (const LinearCut& cut : capacity_cuts(ctx_)) {
      CoverCut c{{}, cut.rhs};
      for (const Term& t : cut.terms) c.terms.emplace_back(t.var.facility, t.coef);
      cover_cuts_.push_back(std::move(c));
    }
  }

  void tick() {
    ++nodes_;
    if (budget_.node_limit && nodes_ > *budget_.node_limit) throw TimedOut{};
    if (budget_.time_limit && (nodes_ & 63) == 0 &&
        Clock::now() - start_ > *budget_.time_limit) {
      throw TimedOut{};
    }
  }

  // Splittable relaxation over the facilities accepted by `use`.
  MaxFlow network(const std::function<bool(int)>& use) const {
    MaxFlow net = base_;
    for (int i = 0; i < m_; ++i) {
      if (use(i)) net.set_capacity(sink_edge_[i], tight_[i]);
    }
    return net;
  }

  // --- facility level --------------------------------------------------

  bool set_open(int i) {
    if (status_[i] == kClosed) return false;
    if (status_[i] == kUndecided) {
      status_[i] = kOpen;
      ++open_count_;
      trail_.push_back(i);
    }
    return true;
  }

  bool set_closed(int i) {
    if (status_[i] == kOpen) return false;
    if (status_[i] == kUndecided) {
      status_[i] = kClosed;
      trail_.push_back(i);
    }
    return true;
  }

  bool open_with_dominators(int i) {
    if (!set_open(i)) return false;
    for (int d : dominators_[i]) {
      if (!set_open(d)) return false;
    }
    return open_count_ <= p_;
  }

  bool close_with_dominated(int i) {
    if (!set_closed(i)) return false;
    for (int d : dominated_[i]) {
      if (!set_closed(d)) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int i = trail_.back();
      trail_.pop_back();
      if (status_[i] == kOpen) --open_count_;
      status_[i] = kUndecided;
    }
  }

  bool cover_cuts_allow() const {
    const int slots = p_ - open_count_;
    std::vector<std::int64_t> free;
    for (const CoverCut& cut : cover_cuts_) {
      if (cut.rhs <= slots) continue;
      std::int64_t lhs = 0;
      free.clear();
      for (auto [k, a] : cut.terms) {
        if (status_[k] == kOpen) {
          lhs += a;
        } else if (status_[k] == kUndecided) {
          free.push_back(a);
        }
      }
      if (lhs >= cut.rhs) continue;
      const std::size_t take =
          std::min(free.size(), static_cast<std::size_t>(slots));
      std::partial_sort(free.begin(), free.begin() + take, free.end(),
                        std::greater<>());
      for (std::size_t t = 0; t < take; ++t) lhs += free[t];
      if (lhs < cut.rhs) return false;
    }
    return true;
  }

  // Tries `candidates` in order: branch k opens candidate k and closes the
  // ones before it.
  bool branch(const std::vector<int>& candidates) {
    const std::size_t mark = trail_.size();
    bool ok = true;
    for (std::size_t k = 0; k < candidates.size() && ok; ++k) {
      const std::size_t inner = trail_.size();
      if (open_with_dominators(candidates[k]) && facility_dfs()) return true;
      undo(inner);
      ok = close_with_dominated(candidates[k]);
    }
    undo(mark);
    return false;
  }

  bool facility_dfs() {
    tick();
    MaxFlow upper = network([&](int i) { return status_[i] != kClosed; });
    if (upper.solve(0, 1) < total_) return false;
    if (!cover_cuts_allow()) return false;

    const double limit = p_ + kBoundSlack;
    const double bound = lagrangian_.improve(
        status_, nodes_ == 1 ? kRootIterations : kNodeIterations, p_ + 1.0,
        limit);
    if (bound > limit) return false;
    // Reduced-cost fixing: a state whose forced value pushes the bound past
    // p is excluded.
    bool fixed = false;
    for (int i = 0; i < m_; ++i) {
      if (status_[i] != kUndecided) continue;
      const double value = lagrangian_.gain(i);
      if (bound + std::max(0.0, 1.0 - value) > limit) {
        if (!close_with_dominated(i)) return false;
        fixed = true;
      } else if (bound + std::max(0.0, value - 1.0) > limit) {
        if (!open_with_dominators(i)) return false;
        fixed = true;
      }
    }
    if (fixed) return facility_dfs();

    // Binary branch on the facility the relaxation is least sure about.
    int split = -1;
    double spread = kSplitThreshold;
    for (int i = 0; i < m_; ++i) {
      if (status_[i] != kUndecided) continue;
      const double a = lagrangian_.activity(i);
      const double s = std::min(a, 1.0 - a);
      if (s > spread) {
        spread = s;
        split = i;
      }
    }
    if (split >= 0 && open_count_ < p_) {
      const std::size_t mark = trail_.size();
      const bool open_first = lagrangian_.activity(split) >= 0.5;
      for (int side = 0; side < 2; ++side) {
        const bool open = (side == 0) == open_first;
        if ((open ? open_with_dominators(split)
                  : close_with_dominated(split)) &&
            facility_dfs()) {
          return true;
        }
        undo(mark);
      }
      return false;
    }

    MaxFlow current = network([&](int i) { return status_[i] == kOpen; });
    const Units deficit = total_ - current.solve(0, 1);
    if (deficit == 0) {
      if (try_assign()) return true;
      if (open_count_ >= p_) return false;
      std::vector<int> rest;
      for (int i = 0; i < m_; ++i) {
        if (status_[i] == kUndecided && !ctx_.customers_of(i).empty()) {
          rest.push_back(i);
        }
      }
      std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
        return tight_[a] > tight_[b];
      });
      return branch(rest);
    }
    if (open_count_ >= p_) return false;

    // Marginal gains; by submodularity their sum bounds any completion.
    const std::vector<char> reach = current.source_side(0);
    std::vector<std::pair<Units, int>> gains;
    for (int u = 0; u < m_; ++u) {
      if (status_[u] != kUndecided) continue;
      const auto cover = ctx_.customers_of(u);
      if (std::none_of(cover.begin(), cover.end(),
                       [&](int j) { return reach[2 + j]; })) {
        continue;
      }
      MaxFlow probe = current;
      probe.set_capacity(sink_edge_[u], tight_[u]);
      const Units gain = probe.augment(0, 1);
      if (gain > 0) gains.emplace_back(gain, u);
    }
    std::stable_sort(gains.begin(), gains.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    Units covered = 0;
    int needed = 0;
    for (const auto& g : gains) {
      if (covered >= deficit) break;
      covered += g.first;
      ++needed;
    }
    if (covered < deficit || open_count_ + needed > p_) return false;

    // Facilities the relaxation values most come first.
    std::vector<int> candidates;
    for (const auto& g : gains) candidates.push_back(g.second);
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return lagrangian_.gain(a) > lagrangian_.gain(b);
    });
    return branch(candidates);
  }

  // --- assignment level ------------------------------------------------

  struct PackingBudgetExceeded {};

  bool try_assign() {
    assign_nodes_ = 0;
    try {
      return assign();
    } catch (const PackingBudgetExceeded&) {
      undecided_packing_ = true;
      return false;
    }
  }

  bool assign() {
    assignment_.assign(n_, -1);
    remaining_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) {
      if (status_[i] == kOpen) remaining_[i] = ctx_.capacity(i);
    }
    // A facility able to take its whole cover does so.
    for (int i = 0; i < m_; ++i) {
      if (status_[i] != kOpen || ctx_.delta(i) > ctx_.capacity(i)) continue;
      for (int j : ctx_.customers_of(i)) {
        if (assignment_[j] >= 0) continue;
        assignment_[j] = i;
        remaining_[i] -= ctx_.demand(j);
      }
    }
    candidates_.assign(n_, {});
    free_.clear();
    for (int j = 0; j < n_; ++j) {
      if (assignment_[j] >= 0) continue;
      for (int i : ctx_.facilities_of(j)) {
        if (status_[i] == kOpen) candidates_[j].push_back(i);
      }
      if (candidates_[j].empty()) return false;
      free_.push_back(j);
    }
    // Interchangeable customers (same demand, same candidates) take
    // facilities in non-decreasing index order.
    previous_twin_.assign(n_, -1);
    for (std::size_t a = 0; a < free_.size(); ++a) {
      for (std::size_t b = a; b-- > 0;) {
        const int j = free_[a];
        const int k = free_[b];
        if (ctx_.demand(j) == ctx_.demand(k) &&
            candidates_[j] == candidates_[k]) {
          previous_twin_[j] = k;
          break;
        }
      }
    }
    free_demand_ = 0;
    for (int j : free_) free_demand_ += ctx_.demand(j);
    eligible_.assign(m_, {});
    for (int j : free_) {
      for (int i : candidates_[j]) eligible_[i].push_back(j);
    }
    reach_cap_.assign(m_, 0);
    return assign_dfs(free_.size());
  }

  // Largest load each open facility can still add from the unassigned
  // customers it may serve (a subset sum within its residual capacity).
  // False when these cannot absorb the remaining demand.
  bool reachable_loads() {
    Units total = 0;
    for (int i = 0; i < m_; ++i) {
      reach_cap_[i] = 0;
      if (status_[i] != kOpen || remaining_[i] <= 0) continue;
      const Units room = remaining_[i];
      if (room > kMaxSubsetTable) {
        reach_cap_[i] = room;
        total += room;
        continue;
      }
      const auto width = static_cast<std::size_t>(room) + 1;
      const std::size_t words = (width + 63) / 64;
      reach_.assign(words, 0);
      reach_[0] = 1;
      Units sum = 0;
      for (int j : eligible_[i]) {
        const Units q = ctx_.demand(j);
        if (assignment_[j] >= 0 || q > room) continue;
        sum += q;
        shift_or(reach_, static_cast<std::size_t>(q), width);
      }
      Units best = std::min(sum, room);
      while (best > 0 && !(reach_[best / 64] >> (best % 64) & 1)) --best;
      reach_cap_[i] = best;
      total += best;
    }
    return total >= free_demand_;
  }

  // bits |= bits << shift, truncated to `width` bits.
  static void shift_or(std::vector<std::uint64_t>& bits, std::size_t shift,
                       std::size_t width) {
    const std::size_t word_shift = shift / 64;
    const std::size_t bit_shift = shift % 64;
    for (std::size_t w = bits.size(); w-- > word_shift;) {
      std::uint64_t v = bits[w - word_shift] << bit_shift;
      if (bit_shift != 0 && w > word_shift) {
        v |= bits[w - word_shift - 1] >> (64 - bit_shift);
      }
      bits[w] |= v;
    }
    if (width % 64 != 0) bits.back() &= (std::uint64_t{1} << (width % 64)) - 1;
  }

  bool flow_bound() {
    if (free_demand_ == 0) return true;
    MaxFlow net(2 + n_ + m_);
    for (int j : free_) {
      if (assignment_[j] >= 0) continue;
      net.add_edge(0, 2 + j, ctx_.demand(j));
      for (int i : candidates_[j]) {
        if (remaining_[i] >= ctx_.demand(j)) {
          net.add_edge(2 + j, 2 + n_ + i, ctx_.demand(j));
        }
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (reach_cap_[i] > 0) net.add_edge(2 + n_ + i, 1, reach_cap_[i]);
    }
    return net.solve(0, 1) >= free_demand_;
  }

  bool assign_dfs(std::size_t left) {
    if (left == 0) return true;
    tick();
    if (++assign_nodes_ > assign_budget_) throw PackingBudgetExceeded{};
    int pick = -1;
    int pick_options = 0;
    for (int j : free_) {
      if (assignment_[j] >= 0) continue;
      int options = 0;
      for (int i : candidates_[j]) {
        if (remaining_[i] >= ctx_.demand(j)) ++options;
      }
      if (options == 0) return false;
      if (pick < 0 || options < pick_options ||
          (options == pick_options && ctx_.demand(j) > ctx_.demand(pick))) {
        pick = j;
        pick_options = options;
      }
    }
    if (!reachable_loads()) return false;
    if (pick_options > 1 && !flow_bound()) return false;

    const Units q = ctx_.demand(pick);
    const int floor =
        previous_twin_[pick] >= 0 ? assignment_[previous_twin_[pick]] : -1;
    std::vector<int> order;
    for (int i : candidates_[pick]) {
      if (i >= floor && remaining_[i] >= q) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return remaining_[a] > remaining_[b];
    });
    for (int i : order) {
      assignment_[pick] = i;
      remaining_[i] -= q;
      free_demand_ -= q;
      if (assign_dfs(left - 1)) return true;
      remaining_[i] += q;
      free_demand_ += q;
      assignment_[pick] = -1;
    }
    return false;
  }

  const CoverageContext& ctx_;
  const int p_;
  const SearchBudget budget_;
  const Clock::time_point start_;
  const int m_;
  const int n_;
  const Units total_;
  std::uint64_t nodes_ = 0;

  std::vector<Units> tight_;
  std::vector<std::vector<int>> dominators_;
  std::vector<std::vector<int>> dominated_;
  std::vector<CoverCut> cover_cuts_;
  MaxFlow base_;
  std::vector<int> sink_edge_;

  std::vector<signed char> status_;
  detail::LagrangianBound lagrangian_;
  std::vector<int> trail_;
  int open_count_ = 0;

  std::uint64_t assign_budget_ = 0;
  std::uint64_t assign_nodes_ = 0;
  bool undecided_packing_ = false;
  std::vector<int> assignment_;
  std::vector<Units> remaining_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> free_;
  std::vector<int> previous_twin_;
  Units free_demand_ = 0;
  std::vector<std::vector<int>> eligible_;
  std::vector<Units> reach_cap_;
  std::vector<std::uint64_t> reach_;
};

}  // namespace

OracleResult solve_cscp(const CoverageContext& ctx, int p,
                        const SearchBudget& budget) {
  return Search(ctx, p, budget).run();
}

}  // namespace cpcp
