#include "cpcp/ils.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

namespace cpcp {

bool HeuristicSolution::feasible() const {
  return !assignment.empty() &&
         std::all_of(excess.begin(), excess.end(),
                     [](Units e) { return e == 0; });
}

double penalty_weight(const Instance& inst) {
  return 1.0 + inst.max_distance() * (1.0 + static_cast<double>(inst.total_demand()));
}

void evaluate(const Instance& inst, HeuristicSolution& s) {
  const double weight = penalty_weight(inst);
  std::vector<Units> load(inst.num_facilities(), 0);
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    load[s.assignment[j]] += inst.demand(static_cast<int>(j));
  }
  s.excess.assign(inst.num_facilities(), 0);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    s.excess[i] = std::max<Units>(0, load[i] - inst.capacity(i));
  }
  s.radius = 0.0;
  s.penalized_cost = 0.0;
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    const int i = s.assignment[j];
    const Distance d = inst.distance(i, static_cast<int>(j));
    s.radius = std::max(s.radius, d);
    s.penalized_cost = std::max(
        s.penalized_cost, d + weight * static_cast<double>(s.excess[i]));
  }
}

namespace {

// Only this many of the worst pairs are tried before a descent stops.
constexpr int kFallThrough = 8;

// (max penalized cost, total excess, pairs attaining the max); compared
// lexicographically.
using Key = std::tuple<double, Units, int>;

class LocalSearch {
 public:
  LocalSearch(const Instance& inst, std::uint64_t seed)
      : inst_(inst),
        m_(inst.num_facilities()),
        n_(inst.num_customers()),
        weight_(penalty_weight(inst)),
        rng_(seed) {}

  void load(const std::vector<int>& open_set, const std::vector<int>& assignment) {
    open_.assign(m_, 0);
    for (int i : open_set) open_[i] = 1;
    assignment_ = assignment;
    load_.assign(m_, 0);
    for (int j = 0; j < n_; ++j) load_[assignment_[j]] += inst_.demand(j);
  }

  HeuristicSolution snapshot() const {
    HeuristicSolution s;
    for (int i = 0; i < m_; ++i) {
      if (open_[i]) s.open_set.push_back(i);
    }
    s.assignment = assignment_;
    evaluate(inst_, s);
    return s;
  }

  Key key() const {
    double worst = -1.0;
    Units excess = 0;
    int at_worst = 0;
    for (int i = 0; i < m_; ++i) excess += over(i);
    for (int j = 0; j < n_; ++j) {
      const double c = cost(j);
      if (c > worst) {
        worst = c;
        at_worst = 1;
      } else if (c == worst) {
        ++at_worst;
      }
    }
    return {worst, excess, at_worst};
  }

  // Runs moves until none of the worst pairs improves.
  void descend() {
    Key current = key();
    while (improve(current)) {
    }
  }

  // Swaps every open facility with a random closed one, then reassigns.
  void perturb() {
    std::vector<int> open_list;
    for (int i = 0; i < m_; ++i) {
      if (open_[i]) open_list.push_back(i);
    }
    for (int i : open_list) {
      std::vector<int> closed;
      for (int k = 0; k < m_; ++k) {
        if (!open_[k]) closed.push_back(k);
      }
      if (closed.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, closed.size() - 1);
      open_[i] = 0;
      open_[closed[pick(rng_)]] = 1;
    }
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    reassign(all);
  }

 private:
  Units over(int i) const {
    return std::max<Units>(0, load_[i] - inst_.capacity(i));
  }

  double cost(int j) const {
    const int i = assignment_[j];
    return inst_.distance(i, j) + weight_ * static_cast<double>(over(i));
  }

  void move(int j, int to) {
    load_[assignment_[j]] -= inst_.demand(j);
    assignment_[j] = to;
    load_[to] += inst_.demand(j);
  }

  // Demand-descending; each customer goes to the nearest open facility with
  // room, or the nearest open one when none has room.
  void reassign(std::vector<int> customers) {
    for (int j : customers) load_[assignment_[j]] -= inst_.demand(j);
    std::stable_sort(customers.begin(), customers.end(), [&](int a, int b) {
      return inst_.demand(a) > inst_.demand(b);
    });
    for (int j : customers) {
      int best_fit = -1;
      int nearest = -1;
      for (int i = 0; i < m_; ++i) {
        if (!open_[i]) continue;
        const Distance d = inst_.distance(i, j);
        if (nearest < 0 || d < inst_.distance(nearest, j)) nearest = i;
        if (load_[i] + inst_.demand(j) <= inst_.capacity(i) &&
            (best_fit < 0 || d < inst_.distance(best_fit, j))) {
          best_fit = i;
        }
      }
      const int to = best_fit >= 0 ? best_fit : nearest;
      assignment_[j] = to;
      load_[to] += inst_.demand(j);
    }
  }

  bool improve(Key& current) {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> c(n_);
    for (int j = 0; j < n_; ++j) c[j] = cost(j);
    const int tries = std::min(n_, kFallThrough);
    std::partial_sort(order.begin(), order.begin() + tries, order.end(),
                      [&](int a, int b) { return c[a] > c[b]; });
    for (int t = 0; t < tries; ++t) {
      const int j = order[t];
      if (cust_swap(j, current) || relocate(j, current) ||
          fac_swap(assignment_[j], current)) {
        return true;
      }
    }
    return false;
  }

  bool accept(Key& current) {
    const Key candidate = key();
    if (candidate < current) {
      current = candidate;
      return true;
    }
    return false;
  }

  bool cust_swap(int j, Key& current) {
    const int a = assignment_[j];
    for (int k = 0; k < n_; ++k) {
      const int b = assignment_[k];
      if (b == a) continue;
      move(j, b);
      move(k, a);
      if (accept(current)) return true;
      move(k, b);
      move(j, a);
    }
    return false;
  }

  bool relocate(int j, Key& current) {
    const int a = assignment_[j];
    for (int i = 0; i < m_; ++i) {
      if (!open_[i] || i == a) continue;
      move(j, i);
      if (accept(current)) return true;
      move(j, a);
    }
    return false;
  }

  bool fac_swap(int a, Key& current) {
    std::vector<int> served;
    for (int j = 0; j < n_; ++j) {
      if (assignment_[j] == a) served.push_back(j);
    }
    const std::vector<int> saved = assignment_;
    const std::vector<Units> saved_load = load_;
    for (int c = 0; c < m_; ++c) {
      if (open_[c]) continue;
      open_[a] = 0;
      open_[c] = 1;
      reassign(served);
      if (accept(current)) return true;
      open_[c] = 0;
      open_[a] = 1;
      assignment_ = saved;
      load_ = saved_load;
    }
    return false;
  }

  const Instance& inst_;
  const int m_;
  const int n_;
  const double weight_;
  std::mt19937_64 rng_;
  std::vector<char> open_;
  std::vector<int> assignment_;
  std::vector<Units> load_;
};

Key key_of(const HeuristicSolution& s, const Instance& inst) {
  const double weight = penalty_weight(inst);
  Units excess = 0;
  for (Units e : s.excess) excess += e;
  int at_worst = 0;
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    const int i = s.assignment[j];
    const double c = inst.distance(i, static_cast<int>(j)) +
                     weight * static_cast<double>(s.excess[i]);
    if (c == s.penalized_cost) ++at_worst;
  }
  return {s.penalized_cost, excess, at_worst};
}

}  // namespace

HeuristicSolution construct_initial(const Instance& inst) {
  const int m = inst.num_facilities();
  const int n = inst.num_customers();
  HeuristicSolution s;
  s.assignment.assign(n, -1);
  std::vector<char> open(m, 0);
  std::vector<int> unassigned(n);
  std::iota(unassigned.begin(), unassigned.end(), 0);
  const int budget = std::min(inst.p(), m);
  for (int opened = 0; opened < budget && !unassigned.empty(); ++opened) {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (open[i]) continue;
      Distance far = 0.0;
      for (int j : unassigned) far = std::max(far, inst.distance(i, j));
      const double ratio = far / static_cast<double>(inst.capacity(i));
      if (best < 0 || ratio < best_ratio) {
        best = i;
        best_ratio = ratio;
      }
    }
    open[best] = 1;
    s.open_set.push_back(best);
    std::stable_sort(unassigned.begin(), unassigned.end(), [&](int a, int b) {
      return inst.distance(best, a) < inst.distance(best, b);
    });
    Units load = 0;
    std::size_t taken = 0;
    while (taken < unassigned.size() &&
           load + inst.demand(unassigned[taken]) <= inst.capacity(best)) {
      load += inst.demand(unassigned[taken]);
      s.assignment[unassigned[taken]] = best;
      ++taken;
    }
    unassigned.erase(unassigned.begin(), unassigned.begin() + taken);
    std::sort(unassigned.begin(), unassigned.end());
  }
  if (s.open_set.empty() && m > 0) {
    open[0] = 1;
    s.open_set.push_back(0);
  }
  for (int j : unassigned) {
    int nearest = -1;
    for (int i : s.open_set) {
      if (nearest < 0 || inst.distance(i, j) < inst.distance(nearest, j)) {
        nearest = i;
      }
    }
    s.assignment[j] = nearest;
  }
  std::sort(s.open_set.begin(), s.open_set.end());
  evaluate(inst, s);
  return s;
}

HeuristicSolution run_ils(const Instance& inst, const IlsOptions& options) {
  HeuristicSolution best = construct_initial(inst);
  if (inst.num_customers() == 0) return best;
  Key best_key = key_of(best, inst);
  LocalSearch search(inst, options.seed);
  search.load(best.open_set, best.assignment);
  for (int round = 0; round < options.rounds; ++round) {
    search.descend();
    const Key k = search.key();
    if (k < best_key) {
      best_key = k;
      best = search.snapshot();
    }
    search.perturb();
  }
  return best;
}

}  // namespace cpcp
