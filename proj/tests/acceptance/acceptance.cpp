// Acceptance suite: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; otherwise only the listed ones. Exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpcp/arc_flow.hpp"
#include "cpcp/coverage.hpp"
#include "cpcp/cscp_oracle.hpp"
#include "cpcp/cuts.hpp"
#include "cpcp/ils.hpp"
#include "cpcp/instance.hpp"
#include "cpcp/radius_ladder.hpp"
#include "cpcp/radius_search.hpp"
#include "cpcp/solver.hpp"
#include "cpcp/subset_sum.hpp"
#include "cpcp/verify.hpp"
#include "cpcp_cli/cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace cpcp;

namespace {

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kSweepSeconds = 30.0;
constexpr double kEquivalenceSeconds = 300.0;
constexpr double kRunSeconds = 600.0;
constexpr std::uint64_t kSweepMaxN = 1'000'000;
constexpr std::uint64_t kPointSearchNodes = 50'000'000;

struct Verdict {
  bool pass = true;
  std::string detail;
  int failures = 0;

  void fail(const std::string& what) {
    pass = false;
    if (++failures <= 5) std::cerr << "    " << what << '\n';
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string str(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const std::vector<const char*> kStrategies = {"ss", "l2", "l3", "l4", "bs"};

// ---------------------------------------------------------------------------
// 1. Worked-example cuts, coefficient-exact.

Verdict golden_cuts() {
  using V = Variable;
  const Instance inst = testing::example_instance();
  const CoverageContext ctx(inst, testing::kExampleRadius);
  const std::vector<LinearCut> rows[] = {
      domination_cuts(ctx),
      forcing_cuts(ctx),
      surplus_cuts(ctx),
      symmetry_cuts(ctx),
      capacity_cuts(ctx),
      ssp_cuts(ctx, true),
      disjunctive_ssp_cuts(ctx),
  };
  auto x1 = [](std::int64_t a, std::int64_t b) {
    return std::vector<Term>{{V::x(0, 0), 3}, {V::x(0, 1), a},
                             {V::x(0, 2), 4}, {V::x(0, 3), 1},
                             {V::x(0, 4), 1}, {V::y(0), -b}};
  };
  struct Expected {
    const char* text;
    CutKind kind;
    LinearCut cut;
  };
  const std::vector<Expected> expected = {
      {"y2 <= y1", CutKind::kDomination,
       make_cut(CutKind::kDomination, {{V::y(1), 1}, {V::y(0), -1}},
                Sense::kLessEqual, 0)},
      {"x21 >= y2", CutKind::kForcing,
       make_cut(CutKind::kForcing, {{V::x(1, 0), 1}, {V::y(1), -1}},
                Sense::kGreaterEqual, 0)},
      {"x11 >= y1 - (x12 + x14)", CutKind::kSurplus,
       make_cut(CutKind::kSurplus,
                {{V::x(0, 0), 1}, {V::x(0, 1), 1}, {V::x(0, 3), 1},
                 {V::y(0), -1}},
                Sense::kGreaterEqual, 0)},
      {"x34 + x25 <= 1", CutKind::kSymmetry,
       make_cut(CutKind::kSymmetry, {{V::x(2, 3), 1}, {V::x(1, 4), 1}},
                Sense::kLessEqual, 1)},
      {"y1 + 2y2 + y3 + 2y4 + y5 >= 2", CutKind::kCapacity,
       make_cut(CutKind::kCapacity,
                {{V::y(0), 1}, {V::y(1), 2}, {V::y(2), 1}, {V::y(3), 2},
                 {V::y(4), 1}},
                Sense::kGreaterEqual, 2)},
      {"3x11 + 5x12 + 4x13 + x14 + x15 <= 10y1 (capacity)",
       CutKind::kSspCapacity,
       make_cut(CutKind::kSspCapacity, x1(5, 10), Sense::kLessEqual, 0)},
      {"3x11 + 5x12 + 4x13 + x14 + x15 <= 10y1 (demand)", CutKind::kSspDemand,
       make_cut(CutKind::kSspDemand, x1(5, 10), Sense::kLessEqual, 0)},
      {"3x11 + 4x12 + 4x13 + x14 + x15 <= 9y1", CutKind::kDisjunctiveSsp,
       make_cut(CutKind::kDisjunctiveSsp, x1(4, 9), Sense::kLessEqual, 0)},
  };
  Verdict v;
  int found = 0;
  for (const Expected& e : expected) {
    bool hit = false;
    for (const auto& family : rows) {
      for (const LinearCut& c : family) {
        hit |= c.kind == e.kind && same_inequality(c, e.cut);
      }
    }
    if (hit) {
      ++found;
    } else {
      v.fail(std::string("missing ") + e.text);
    }
  }
  v.detail = std::to_string(found) + "/8 inequalities reproduced exactly";
  return v;
}

// ---------------------------------------------------------------------------
// 2. Subset-sum tightening.

Units enumerate_subset_sum(const std::vector<Units>& w, Units cap) {
  Units best = 0;
  for (std::uint32_t mask = 0; mask < (1u << w.size()); ++mask) {
    Units s = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (mask >> k & 1) s += w[k];
    }
    if (s <= cap) best = std::max(best, s);
  }
  return best;
}

Verdict subset_sum_tightening() {
  Verdict v;
  const Instance inst = testing::example_instance();
  const CoverageContext ctx(inst, testing::kExampleRadius);
  const Units q1 = tightened_capacity(ctx, 0);
  const BetaPair b = beta_pair(ctx, 0, 1);
  if (q1 != 10) v.fail("Q'_1 = " + std::to_string(q1) + ", expected 10");
  if (b.excluded != 9) {
    v.fail("beta0_12 = " + std::to_string(b.excluded) + ", expected 9");
  }
  if (b.included != 5) {
    v.fail("beta1_12 = " + std::to_string(b.included) + ", expected 5");
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(0, 15);
  std::uniform_int_distribution<Units> weight(1, 100);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Units> w(size(rng));
    Units total = 0;
    for (Units& x : w) total += x = weight(rng);
    const Units cap = std::uniform_int_distribution<Units>(0, total + 5)(rng);
    const Units dp = max_subset_sum(w, cap);
    const Units brute = enumerate_subset_sum(w, cap);
    if (dp != brute) {
      ++mismatches;
      v.fail("weight set " + std::to_string(trial) + ": dp " +
             std::to_string(dp) + " vs " + std::to_string(brute));
    }
  }
  v.detail = "Q'_1=" + std::to_string(q1) + " beta0=" +
             std::to_string(b.excluded) + " beta1=" +
             std::to_string(b.included) + "; 500 weight sets, " +
             std::to_string(mismatches) + " mismatches";
  return v;
}

// ---------------------------------------------------------------------------
// 3. Probe-count bounds of the radius search.

// probes <= L * N^(1/L)  <=>  probes^L <= L^L * N, exact in 128 bits.
bool within_layered_bound(std::uint64_t probes, int layers, std::uint64_t n) {
  unsigned __int128 lhs = 1;
  unsigned __int128 rhs = n;
  for (int k = 0; k < layers; ++k) {
    lhs *= probes;
    rhs *= static_cast<unsigned>(layers);
  }
  return lhs <= rhs;
}

std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

Verdict search_bounds() {
  Verdict v;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_n(0.0, std::log(double(kSweepMaxN)));
  std::uint64_t largest = 0;
  std::uint64_t searches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // N candidate radii strictly inside the bracket (0, N + 1]. Besides a
    // uniform first feasible index, the two extremes that maximise the probe
    // count are replayed: none feasible inside, and only the last one.
    const auto n = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::exp(log_n(rng))), 1, kSweepMaxN);
    largest = std::max(largest, n);
    const std::uint64_t thresholds[] = {
        std::uniform_int_distribution<std::uint64_t>(1, n + 1)(rng), n + 1, n};
    for (const std::uint64_t threshold : thresholds) {
      const ProbeFn oracle = [threshold](std::size_t k) {
        return k >= threshold ? OracleStatus::kFeasible
                              : OracleStatus::kInfeasible;
      };
      auto check = [&](const SearchOutcome& out, const std::string& name,
                       bool probes_ok) {
        ++searches;
        const std::string where = name + " N=" + std::to_string(n) +
                                  " threshold " + std::to_string(threshold);
        if (!out.complete || out.optimal_index() != threshold) {
          v.fail(where + ": wrong result");
        }
        if (!probes_ok) {
          v.fail(where + ": " + std::to_string(out.state.stats.probes) +
                 " probes, " + std::to_string(out.state.stats.feasible) +
                 " feasible");
        }
      };
      for (int layers = 1; layers <= 5; ++layers) {
        const SearchOutcome out =
            run_search(Strategy::layered(layers), oracle, 0, n + 1);
        check(out, "L" + std::to_string(layers),
              out.state.stats.feasible <= static_cast<std::uint64_t>(layers) &&
                  within_layered_bound(out.state.stats.probes, layers, n));
      }
      const SearchOutcome bin =
          run_search(Strategy::binary(), oracle, 0, n + 1);
      check(bin, "BS", bin.state.stats.probes <= ceil_log2(n) + 1);
    }
  }
  v.detail = "1000 oracles, N up to " + std::to_string(largest) + ", " +
             std::to_string(searches) + " searches, " +
             std::to_string(v.failures) + " violations";
  return v;
}

// ---------------------------------------------------------------------------
// 4. End-to-end equivalence with exhaustive enumeration.

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(4);
  testing::RandomSpec spec;
  spec.min_n = 2;
  spec.max_n = 12;
  int solved = 0;
  int instances = 0;
  int model_infeasible = 0;
  // Draws until 200 instances have an optimum; the infeasible draws in
  // between must be reported as such.
  for (int trial = 0; instances < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, spec);
    const auto opt = testing::exhaustive_optimum(inst);
    if (opt) {
      ++instances;
    } else {
      ++model_infeasible;
    }
    for (const char* token : kStrategies) {
      SolveOptions options;
      options.strategy = *Strategy::parse(token);
      options.seed = static_cast<std::uint64_t>(trial) + 1;
      const SolveReport r = solve_cpcp(inst, options);
      const std::string where =
          "instance " + std::to_string(trial) + " " + token;
      if (!opt) {
        if (r.status != SolveStatus::kInfeasibleModel) {
          v.fail(where + ": expected model infeasibility");
        }
        continue;
      }
      if (r.status != SolveStatus::kOptimal || !r.ub || *r.ub != *opt ||
          r.lb != *opt) {
        v.fail(where + ": got " + (r.ub ? format_number(*r.ub) : "none") +
               ", exhaustive optimum " + format_number(*opt));
        continue;
      }
      if (!r.witness || !verify_witness(inst, *r.ub, inst.p(),
                                        r.witness->assignment,
                                        r.witness->open_set)) {
        v.fail(where + ": witness rejected");
        continue;
      }
      ++solved;
    }
  }
  v.detail = "200 instances with n <= 12 (plus " +
             std::to_string(model_infeasible) +
             " model-infeasible draws), " + std::to_string(solved) +
             "/1000 runs matched the enumerated optimum, " +
             std::to_string(v.failures) + " mismatches";
  return v;
}

// ---------------------------------------------------------------------------
// 5. Cut soundness and optimality preservation.

// Enumerates x over the covered pairs of an open set (customer-major), with
// the covering and capacity rows of the plain model and the given cuts
// checked as soon as their last assignment variable is fixed.
class PointSearch {
 public:
  PointSearch(const CoverageContext& ctx, const std::vector<int>& open,
              const std::vector<const LinearCut*>& cuts)
      : ctx_(ctx), open_(ctx.num_facilities(), 0),
        x_(static_cast<std::size_t>(ctx.num_facilities()) *
               ctx.num_customers(),
           0),
        load_(ctx.num_facilities(), 0) {
    for (int i : open) open_[i] = 1;
    for (int j = 0; j < ctx.num_customers(); ++j) {
      const std::size_t first = pairs_.size();
      for (int i : ctx.facilities_of(j)) {
        if (open_[i]) pairs_.emplace_back(i, j);
      }
      customer_end_.push_back(pairs_.size());
      if (pairs_.size() == first) empty_cover_ = true;
    }
    std::map<std::pair<int, int>, std::size_t> position;
    for (std::size_t t = 0; t < pairs_.size(); ++t) position[pairs_[t]] = t;
    due_.assign(pairs_.size() + 1, {});
    for (const LinearCut* c : cuts) {
      std::size_t last = 0;  // slot 0: only y or closed-facility x
      for (const Term& term : c->terms) {
        if (term.var.kind != Variable::Kind::kAssign) continue;
        const auto it = position.find({term.var.facility, term.var.customer});
        if (it != position.end()) last = std::max(last, it->second + 1);
      }
      due_[last].push_back(c);
    }
  }

  // True when some x completes the point.
  bool exists(std::uint64_t& budget) {
    if (empty_cover_) return false;
    if (!cuts_hold(0)) return false;
    return dfs(0, budget);
  }

 private:
  int value(const Variable& v) const {
    if (v.kind == Variable::Kind::kOpen) return open_[v.facility];
    return x_[static_cast<std::size_t>(v.facility) * ctx_.num_customers() +
              v.customer];
  }

  bool cuts_hold(std::size_t slot) const {
    for (const LinearCut* c : due_[slot]) {
      if (!c->satisfied_by([&](const Variable& var) { return value(var); })) {
        return false;
      }
    }
    return true;
  }

  bool covered(int j) const {
    for (int i : ctx_.facilities_of(j)) {
      if (open_[i] && value(Variable::x(i, j))) return true;
    }
    return false;
  }

  bool dfs(std::size_t t, std::uint64_t& budget) {
    if (budget == 0) throw std::runtime_error("point search budget exhausted");
    --budget;
    if (t == pairs_.size()) return true;
    const auto [i, j] = pairs_[t];
    const bool last_of_customer =
        std::find(customer_end_.begin(), customer_end_.end(), t + 1) !=
        customer_end_.end();
    int& x = x_[static_cast<std::size_t>(i) * ctx_.num_customers() + j];
    for (int val : {1, 0}) {
      if (val == 1 && load_[i] + ctx_.demand(j) > ctx_.capacity(i)) continue;
      x = val;
      if (val) load_[i] += ctx_.demand(j);
      const bool ok = (!last_of_customer || covered(j)) && cuts_hold(t + 1) &&
                      dfs(t + 1, budget);
      if (val) load_[i] -= ctx_.demand(j);
      if (ok) return true;
    }
    x = 0;
    return false;
  }

  const CoverageContext& ctx_;
  std::vector<int> open_;
  std::vector<int> x_;
  std::vector<Units> load_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::size_t> customer_end_;
  std::vector<std::vector<const LinearCut*>> due_;
  bool empty_cover_ = false;
};

Verdict cut_soundness() {
  Verdict v;
  std::mt19937_64 rng(5);
  testing::RandomSpec spec;
  spec.min_n = 2;
  spec.max_n = 8;
  std::uint64_t checks = 0;
  int contexts = 0;
  int preserved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, spec);
    const RadiusLadder ladder(inst);
    const int m = inst.num_facilities();
    for (std::size_t k = 1; k <= ladder.size(); ++k) {
      const CoverageContext ctx(inst, ladder[k]);
      ++contexts;
      const std::string where =
          "instance " + std::to_string(trial) + " r=" + format_number(ladder[k]);

      // (a) Single-facility families hold on every load-feasible slice
      // (y_i, x_i.) of the plain model, a superset of the slices of
      // feasible points. Facility-only capacity rows hold on every open set
      // that admits an assignment.
      std::vector<LinearCut> local = linking_cuts(ctx);
      for (LinearCut& c : ssp_cuts(ctx, true)) local.push_back(std::move(c));
      for (LinearCut& c : disjunctive_ssp_cuts(ctx, true)) {
        local.push_back(std::move(c));
      }
      std::vector<std::vector<const LinearCut*>> by_facility(m);
      for (const LinearCut& c : local) {
        for (const Term& t : c.terms) {
          if (t.var.kind == Variable::Kind::kOpen) {
            by_facility[t.var.facility].push_back(&c);
            break;
          }
        }
      }
      for (int i = 0; i < m; ++i) {
        const auto cover = ctx.customers_of(i);
        for (std::uint32_t mask = 0; mask < (1u << cover.size()); ++mask) {
          Units load = 0;
          for (std::size_t t = 0; t < cover.size(); ++t) {
            if (mask >> t & 1) load += ctx.demand(cover[t]);
          }
          for (int y = 0; y <= 1; ++y) {
            if (load > ctx.capacity(i) * y) continue;
            auto point = [&](const Variable& var) -> int {
              if (var.kind == Variable::Kind::kOpen) {
                return var.facility == i ? y : 0;
              }
              if (var.facility != i) return 0;
              const auto pos = std::find(cover.begin(), cover.end(),
                                         var.customer);
              return pos != cover.end() &&
                     (mask >> (pos - cover.begin()) & 1);
            };
            for (const LinearCut* c : by_facility[i]) {
              ++checks;
              if (!c->satisfied_by(point)) {
                v.fail(where + ": " + to_string(*c) + " cuts a feasible point");
              }
            }
          }
        }
      }
      const std::vector<LinearCut> cap = capacity_cuts(ctx, true);
      std::optional<int> plain_min;
      for (std::uint32_t ymask = 0; ymask < (1u << m); ++ymask) {
        std::vector<int> open;
        for (int i = 0; i < m; ++i) {
          if (ymask >> i & 1) open.push_back(i);
        }
        if (!testing::exhaustive_assignment(inst, ladder[k], open)) continue;
        const int size = static_cast<int>(open.size());
        if (!plain_min || size < *plain_min) plain_min = size;
        auto point = [&](const Variable& var) -> int {
          return var.kind == Variable::Kind::kOpen ? (ymask >> var.facility & 1)
                                                   : 0;
        };
        for (const LinearCut& c : cap) {
          ++checks;
          if (!c.satisfied_by(point)) {
            v.fail(where + ": " + to_string(c) + " cuts a feasible open set");
          }
        }
      }

      // (b) The strengthening families after conflict resolution keep the
      // minimum number of open facilities.
      if (!plain_min) {
        ++preserved;  // infeasible stays infeasible under extra rows
        continue;
      }
      const CutSet all = generate_cuts(ctx);
      std::vector<const LinearCut*> extra;
      for (const LinearCut& c : all.cuts) {
        if (c.kind == CutKind::kDomination || c.kind == CutKind::kForcing ||
            c.kind == CutKind::kSurplus || c.kind == CutKind::kSymmetry) {
          extra.push_back(&c);
        }
      }
      bool found = false;
      std::uint64_t budget = kPointSearchNodes;
      try {
        testing::for_each_combination(m, *plain_min, [&](const auto& open) {
          if (found) return;
          found = PointSearch(ctx, open, extra).exists(budget);
        });
      } catch (const std::runtime_error& e) {
        v.fail(where + ": " + e.what());
        continue;
      }
      if (found) {
        ++preserved;
      } else {
        v.fail(where + ": strengthened minimum exceeds " +
               std::to_string(*plain_min));
      }
    }
  }
  v.detail = "100 instances, " + std::to_string(contexts) + " radii, " +
             std::to_string(checks) + " cut evaluations, " +
             std::to_string(preserved) + "/" + std::to_string(contexts) +
             " minima preserved, " + std::to_string(v.failures) +
             " violations";
  return v;
}

// ---------------------------------------------------------------------------
// 6. Feasibility is monotone in the radius.

Verdict radius_monotonicity() {
  Verdict v;
  std::mt19937_64 rng(6);
  testing::RandomSpec spec;
  spec.min_n = 2;
  spec.max_n = 10;
  std::uint64_t pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, spec);
    const RadiusLadder ladder(inst);
    std::vector<bool> feasible;
    for (std::size_t k = 1; k <= ladder.size(); ++k) {
      const CoverageContext ctx(inst, ladder[k]);
      const OracleResult res = solve_cscp(ctx, inst.p());
      const bool ok = res.status == OracleStatus::kFeasible;
      if (res.status == OracleStatus::kTimedOut) {
        v.fail("instance " + std::to_string(trial) + ": timed out");
      }
      if (ok != testing::exhaustive_feasible(inst, ladder[k], inst.p())) {
        v.fail("instance " + std::to_string(trial) + " r=" +
               format_number(ladder[k]) + ": disagrees with enumeration");
      }
      feasible.push_back(ok);
    }
    for (std::size_t a = 0; a < feasible.size(); ++a) {
      for (std::size_t b = a + 1; b < feasible.size(); ++b) {
        ++pairs;
        if (feasible[a] && !feasible[b]) {
          v.fail("instance " + std::to_string(trial) + ": feasible at " +
                 format_number(ladder[a + 1]) + " but not at " +
                 format_number(ladder[b + 1]));
        }
      }
    }
  }
  v.detail = "100 instances, " + std::to_string(pairs) + " radius pairs, " +
             std::to_string(v.failures) + " violations";
  return v;
}

// ---------------------------------------------------------------------------
// 7 and 9. Generated n = 50 instances.

struct Generated {
  std::string name;
  Instance instance;
  Distance optimum;
};

// Optima of the batch below, computed independently by an external MILP
// solver on the compact assignment formulation.
const std::map<std::string, Distance> kReferenceOptima = {
    {"rand_n50_n10_int_s2026_001", 22}, {"rand_n50_n10_int_s2026_002", 28},
    {"rand_n50_n10_int_s2026_003", 21}, {"rand_n50_n10_int_s2026_004", 24},
    {"rand_n50_n10_int_s2026_005", 22}, {"rand_n50_n7_int_s2026_001", 19},
    {"rand_n50_n7_int_s2026_002", 22},  {"rand_n50_n7_int_s2026_003", 18},
    {"rand_n50_n7_int_s2026_004", 19},  {"rand_n50_n7_int_s2026_005", 15},
    {"rand_n50_n4_int_s2026_001", 15},  {"rand_n50_n4_int_s2026_002", 17},
    {"rand_n50_n4_int_s2026_003", 15},  {"rand_n50_n4_int_s2026_004", 18},
    {"rand_n50_n4_int_s2026_005", 13},  {"rand_n50_n3_int_s2026_001", 14},
    {"rand_n50_n3_int_s2026_002", 17},  {"rand_n50_n3_int_s2026_003", 14},
    {"rand_n50_n3_int_s2026_004", 16},  {"rand_n50_n3_int_s2026_005", 12},
};

// Five instances per budget rule, through the command-line generator.
std::vector<Generated> generated_batch() {
  const fs::path dir = fs::temp_directory_path() / "cpcp_acceptance_batch";
  fs::remove_all(dir);
  for (const char* rule : {"n10", "n7", "n4", "n3"}) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"cpcp", "generate", "--n", "50", "--rule", rule,
                               "--count", "5", "--seed", "2026", "--mode",
                               "int", "--out", dir.string()},
                              out, err);
    if (code != 0) throw std::runtime_error("generate failed: " + err.str());
  }
  std::vector<Generated> batch;
  for (const auto& [name, opt] : kReferenceOptima) {
    batch.push_back({name, load_instance(dir / (name + ".cpc")), opt});
  }
  fs::remove_all(dir);
  return batch;
}

Verdict generated_optimality() {
  Verdict v;
  int optimal = 0;
  int runs = 0;
  double slowest = 0.0;
  double total = 0.0;
  for (const Generated& g : generated_batch()) {
    std::optional<Distance> agreed;
    for (const char* token : kStrategies) {
      SolveOptions options;
      options.strategy = *Strategy::parse(token);
      options.time_limit = std::chrono::duration<double>(kRunSeconds);
      const SolveReport r = solve_cpcp(g.instance, options);
      ++runs;
      slowest = std::max(slowest, r.seconds);
      total += r.seconds;
      const std::string where = g.name + " " + token;
      std::cout << "    " << where << ": " << to_string(r.status) << " lb "
                << format_number(r.lb) << " ub "
                << (r.ub ? format_number(*r.ub) : "-") << " probes "
                << r.search.stats.probes << " " << str(r.seconds) << " s\n"
                << std::flush;
      if (r.status != SolveStatus::kOptimal || !r.ub) {
        v.fail(where + ": not proven optimal within " + str(kRunSeconds, 0) +
               " s");
        continue;
      }
      if (!r.witness || !verify_witness(g.instance, *r.ub, g.instance.p(),
                                        r.witness->assignment,
                                        r.witness->open_set)) {
        v.fail(where + ": witness rejected");
        continue;
      }
      if (agreed && *agreed != *r.ub) {
        v.fail(where + ": disagrees with other strategies");
        continue;
      }
      agreed = *r.ub;
      if (*r.ub != g.optimum) {
        v.fail(where + ": " + format_number(*r.ub) + " vs reference " +
               format_number(g.optimum));
        continue;
      }
      ++optimal;
    }
  }
  v.detail = std::to_string(optimal) + "/" + std::to_string(runs) +
             " runs optimal and in agreement; slowest " + str(slowest) +
             " s, total " + str(total) + " s";
  return v;
}

Verdict heuristic_sanity() {
  Verdict v;
  int ok = 0;
  int runs = 0;
  for (const Generated& g : generated_batch()) {
    const RadiusLadder ladder(g.instance);
    const std::size_t opt_index = *ladder.index_of(g.optimum);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ++runs;
      const HeuristicSolution s = run_ils(g.instance, {300, seed});
      const std::string where = g.name + " seed " + std::to_string(seed);
      if (!s.feasible() ||
          !verify_witness(g.instance, s.radius, g.instance.p(), s.assignment,
                          s.open_set)) {
        v.fail(where + ": infeasible heuristic solution");
        continue;
      }
      if (s.radius < g.optimum) {
        v.fail(where + ": radius below the optimum");
        continue;
      }
      // The bracket (sentinel, index(UB)] must be valid and hold the optimum.
      const auto up = ladder.index_of(s.radius);
      if (!up || *up == 0 || *up < opt_index) {
        v.fail(where + ": invalid bracket");
        continue;
      }
      ++ok;
    }
    SolveOptions options;
    options.strategy = Strategy::binary();
    options.node_limit = 1;  // only the initial bracket matters here
    const SolveReport r = solve_cpcp(g.instance, options);
    if (!r.heuristic_ub || r.search.i_up > *ladder.index_of(*r.heuristic_ub) ||
        r.search.i_low >= r.search.i_up || r.search.i_up < opt_index ||
        (r.search.i_low > 0 && r.search.i_low >= opt_index)) {
      v.fail(g.name + ": solver bracket inconsistent with its heuristic bound");
    }
  }
  v.detail = std::to_string(ok) + "/" + std::to_string(runs) +
             " heuristic runs feasible with radius >= optimum and a valid "
             "bracket";
  return v;
}

// ---------------------------------------------------------------------------
// 8. Arc-flow paths versus feasible subsets.

Verdict arcflow_structure() {
  Verdict v;
  std::mt19937_64 rng(8);
  testing::RandomSpec spec;
  spec.min_n = 4;
  spec.max_n = 14;
  spec.max_demand = 12;
  spec.max_capacity = 40;
  int pairs = 0;
  std::uint64_t largest = 0;
  while (pairs < 100) {
    const Instance inst = testing::random_instance(rng, spec);
    const RadiusLadder ladder(inst);
    const Distance r =
        ladder[1 + std::uniform_int_distribution<std::size_t>(
                       0, ladder.size() - 1)(rng)];
    const CoverageContext ctx(inst, r);
    const int i = std::uniform_int_distribution<int>(
        0, inst.num_facilities() - 1)(rng);
    const auto cover = ctx.customers_of(i);
    if (cover.size() > 12) continue;
    ++pairs;
    const ArcFlowGraph g = build_arcflow_graph(ctx, i);
    const Units cap = ctx.capacity(i);

    std::uint64_t subsets = 0;
    for (std::uint32_t mask = 0; mask < (1u << cover.size()); ++mask) {
      Units load = 0;
      for (std::size_t t = 0; t < cover.size(); ++t) {
        if (mask >> t & 1) load += ctx.demand(cover[t]);
      }
      subsets += load <= cap;
    }

    // Paths whose customer arcs follow the ordering, by filling level.
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(cap) + 1, 0);
    ways[0] = 1;
    std::set<std::pair<int, Units>> seen;
    for (int j : g.ordering) {
      std::vector<std::uint64_t> next = ways;
      for (const CustomerArc& a : g.customer_arcs) {
        if (a.customer != j) continue;
        if (a.head - a.tail != ctx.demand(j) || a.head > cap ||
            !seen.emplace(j, a.tail).second) {
          v.fail("malformed customer arc");
          continue;
        }
        next[a.head] += ways[a.tail];
      }
      ways = next;
    }
    std::uint64_t paths = ways[cap];
    for (const LossArc& a : g.loss_arcs) {
      if (a.head != cap || a.tail >= cap) {
        v.fail("malformed loss arc");
        continue;
      }
      paths += ways[a.tail];
    }
    largest = std::max(largest, subsets);
    if (paths != subsets) {
      v.fail("facility " + std::to_string(i) + ": " + std::to_string(paths) +
             " paths vs " + std::to_string(subsets) + " subsets");
    }
  }
  v.detail = "100 (facility, radius) pairs, up to " + std::to_string(largest) +
             " subsets, " + std::to_string(v.failures) + " count mismatches";
  return v;
}

struct Criterion {
  int id;
  std::function<Verdict()> run;
  double max_seconds;  // 0: no wall-clock requirement beyond the run limits
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, golden_cuts, kGoldenSeconds},
      {2, subset_sum_tightening, 0},
      {3, search_bounds, kSweepSeconds},
      {4, oracle_equivalence, kEquivalenceSeconds},
      {5, cut_soundness, 0},
      {6, radius_monotonicity, 0},
      {7, generated_optimality, 0},
      {8, arcflow_structure, 0},
      {9, heuristic_sanity, 0},
  };
  std::set<int> wanted;
  for (int a = 1; a < argc; ++a) wanted.insert(std::atoi(argv[a]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds = since(start);
    if (c.max_seconds > 0 && seconds >= c.max_seconds) {
      v.pass = false;
      v.detail += "; exceeded " + str(c.max_seconds, 0) + " s";
    }
    all_pass &= v.pass;
    std::cout << "criterion " << c.id << ": " << (v.pass ? "PASS" : "FAIL")
              << " (" << str(seconds) << " s) " << v.detail << std::endl;
  }
  return all_pass ? 0 : 1;
}
