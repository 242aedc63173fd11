#include "cpcp/cuts.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cpcp/subset_sum.hpp"

namespace cpcp {

std::string variable_name(const Variable& v) {
  if (v.kind == Variable::Kind::kOpen) {
    return "y_" + std::to_string(v.facility + 1);
  }
  return "x_" + std::to_string(v.facility + 1) + "_" +
         std::to_string(v.customer + 1);
}

std::string_view to_string(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "=";
}

std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::kLinking:
      return "linking";
    case CutKind::kDomination:
      return "domination";
    case CutKind::kForcing:
      return "forcing";
    case CutKind::kSurplus:
      return "surplus";
    case CutKind::kSymmetry:
      return "symmetry";
    case CutKind::kCapacity:
      return "capacity";
    case CutKind::kSspCapacity:
      return "ssp-capacity";
    case CutKind::kSspDemand:
      return "ssp-demand";
    case CutKind::kDisjunctiveSsp:
      return "disjunctive-ssp";
  }
  return "unknown";
}

bool LinearCut::mentions(const Variable& v) const {
  return std::any_of(terms.begin(), terms.end(),
                     [&](const Term& t) { return t.var == v; });
}

LinearCut make_cut(CutKind kind, std::vector<Term> terms, Sense sense,
                   std::int64_t rhs, CutOrigin origin) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  return LinearCut{kind, std::move(merged), sense, rhs, std::move(origin)};
}

bool same_inequality(const LinearCut& a, const LinearCut& b) {
  return a.sense == b.sense && a.rhs == b.rhs && a.terms == b.terms;
}

std::string to_string(const LinearCut& cut) {
  std::ostringstream out;
  bool first = true;
  for (const Term& t : cut.terms) {
    std::int64_t c = t.coef;
    if (first) {
      if (c < 0) out << "- ";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    c = c < 0 ? -c : c;
    if (c != 1) out << c << ' ';
    out << variable_name(t.var);
    first = false;
  }
  if (first) out << '0';
  out << ' ' << to_string(cut.sense) << ' ' << cut.rhs;
  return out.str();
}

std::size_t CutSet::count(CutKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(cuts.begin(), cuts.end(),
                    [kind](const LinearCut& c) { return c.kind == kind; }));
}

namespace {

bool is_subset(std::span<const int> small, std::span<const int> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool dominates(const CoverageContext& ctx, int i1, int i2) {
  return ctx.capacity(i1) >= ctx.kappa(i2) &&
         is_subset(ctx.customers_of(i2), ctx.customers_of(i1));
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Calls fn(subset) for every subset of `items` with size in [lo, hi], in
// lexicographic order of positions. Stops early when fn returns false.
template <typename Fn>
void for_each_subset(const std::vector<int>& items, int lo, int hi, Fn&& fn) {
  std::vector<int> chosen;
  const int n = static_cast<int>(items.size());
  bool keep_going = true;
  for (int size = std::max(lo, 1); size <= std::min(hi, n) && keep_going;
       ++size) {
    std::vector<int> idx(size);
    for (int t = 0; t < size; ++t) idx[t] = t;
    while (keep_going) {
      chosen.clear();
      for (int t : idx) chosen.push_back(items[t]);
      keep_going = fn(chosen);
      int t = size - 1;
      while (t >= 0 && idx[t] == n - size + t) --t;
      if (t < 0) break;
      ++idx[t];
      for (int u = t + 1; u < size; ++u) idx[u] = idx[u - 1] + 1;
    }
  }
}

}  // namespace

std::vector<std::pair<int, int>> domination_pairs(const CoverageContext& ctx) {
  std::vector<std::pair<int, int>> pairs;
  const int m = ctx.num_facilities();
  for (int i1 = 0; i1 < m; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      if (i1 == i2 || !dominates(ctx, i1, i2)) continue;
      if (i1 > i2 && dominates(ctx, i2, i1)) continue;
      pairs.emplace_back(i1, i2);
    }
  }
  return pairs;
}

std::vector<LinearCut> linking_cuts(const CoverageContext& ctx) {
  std::vector<LinearCut> cuts;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    for (int j : ctx.customers_of(i)) {
      CutOrigin o;
      o.facility = i;
      o.customer = j;
      cuts.push_back(make_cut(CutKind::kLinking,
                              {{Variable::x(i, j), 1}, {Variable::y(i), -1}},
                              Sense::kLessEqual, 0, o));
    }
  }
  return cuts;
}

std::vector<LinearCut> domination_cuts(const CoverageContext& ctx) {
  std::vector<LinearCut> cuts;
  for (auto [i1, i2] : domination_pairs(ctx)) {
    CutOrigin o;
    o.facility = i1;
    o.other_facility = i2;
    cuts.push_back(make_cut(CutKind::kDomination,
                            {{Variable::y(i2), 1}, {Variable::y(i1), -1}},
                            Sense::kLessEqual, 0, o));
  }
  return cuts;
}

std::vector<LinearCut> forcing_cuts(const CoverageContext& ctx) {
  std::vector<LinearCut> cuts;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    if (ctx.delta(i) > ctx.capacity(i)) continue;
    for (int j : ctx.customers_of(i)) {
      CutOrigin o;
      o.facility = i;
      o.customer = j;
      cuts.push_back(make_cut(CutKind::kForcing,
                              {{Variable::x(i, j), 1}, {Variable::y(i), -1}},
                              Sense::kGreaterEqual, 0, o));
    }
  }
  return cuts;
}

std::vector<LinearCut> surplus_cuts(const CoverageContext& ctx,
                                    const SurplusPolicy& policy) {
  std::vector<LinearCut> cuts;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    const Units cap = ctx.capacity(i);
    if (ctx.delta(i) <= cap) continue;
    const auto cover = ctx.customers_of(i);
    std::vector<int> order(cover.begin(), cover.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return ctx.demand(a) > ctx.demand(b);
    });
    std::size_t emitted = 0;
    // The cut only depends on S minus k, so different (S, k) can repeat it.
    std::set<std::vector<int>> seen;
    for_each_subset(order, policy.min_size, policy.max_size,
                    [&](const std::vector<int>& chosen) {
      Units load = 0;
      for (int j : chosen) load += ctx.demand(j);
      if (load > cap) return true;
      std::vector<int> s = chosen;
      std::sort(s.begin(), s.end());
      for (int k : s) {
        if (emitted >= policy.max_cuts_per_facility) return false;
        std::vector<int> rest;
        for (int j : s) {
          if (j != k) rest.push_back(j);
        }
        if (!seen.insert(std::move(rest)).second) continue;
        std::vector<Term> terms{{Variable::x(i, k), 1}, {Variable::y(i), -1}};
        for (int j : cover) {
          if (!std::binary_search(s.begin(), s.end(), j)) {
            terms.push_back({Variable::x(i, j), 1});
          }
        }
        CutOrigin o;
        o.facility = i;
        o.customer = k;
        o.subset = s;
        cuts.push_back(make_cut(CutKind::kSurplus, std::move(terms),
                                Sense::kGreaterEqual, 0, std::move(o)));
        ++emitted;
      }
      return true;
    });
  }
  return cuts;
}

std::vector<LinearCut> symmetry_cuts(const CoverageContext& ctx) {
  std::vector<LinearCut> cuts;
  const int m = ctx.num_facilities();
  for (int i1 = 0; i1 < m; ++i1) {
    for (int i2 = i1 + 1; i2 < m; ++i2) {
      std::vector<int> common;
      std::set_intersection(ctx.customers_of(i1).begin(),
                            ctx.customers_of(i1).end(),
                            ctx.customers_of(i2).begin(),
                            ctx.customers_of(i2).end(),
                            std::back_inserter(common));
      for (std::size_t a = 0; a < common.size(); ++a) {
        for (std::size_t b = a + 1; b < common.size(); ++b) {
          const int j1 = common[a];
          const int j2 = common[b];
          if (ctx.demand(j1) != ctx.demand(j2)) continue;
          CutOrigin o;
          o.facility = i1;
          o.other_facility = i2;
          o.customer = j1;
          o.other_customer = j2;
          cuts.push_back(make_cut(
              CutKind::kSymmetry,
              {{Variable::x(i1, j2), 1}, {Variable::x(i2, j1), 1}},
              Sense::kLessEqual, 1, o));
        }
      }
    }
  }
  return cuts;
}

std::vector<LinearCut> capacity_cuts(const CoverageContext& ctx,
                                     bool keep_dominated) {
  std::vector<LinearCut> cuts;
  std::set<std::pair<std::vector<std::pair<Variable, std::int64_t>>,
                     std::int64_t>>
      seen;
  std::vector<char> in_fs(ctx.num_facilities());
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    const std::int64_t gamma = ctx.capacity(i);
    const auto cover = ctx.customers_of(i);
    std::vector<int> items(cover.begin(), cover.end());
    for_each_subset(items, 2, 3, [&](const std::vector<int>& s) {
      Units load = 0;
      for (int j : s) load += ctx.demand(j);
      const std::int64_t rhs = ceil_div(load, gamma);
      if (rhs <= 1 && !keep_dominated) return true;
      std::fill(in_fs.begin(), in_fs.end(), 0);
      for (int j : s) {
        for (int k : ctx.facilities_of(j)) in_fs[k] = 1;
      }
      std::vector<Term> terms;
      std::vector<std::pair<Variable, std::int64_t>> key;
      for (int k = 0; k < ctx.num_facilities(); ++k) {
        if (!in_fs[k]) continue;
        const std::int64_t a = ceil_div(ctx.capacity(k), gamma);
        terms.push_back({Variable::y(k), a});
        key.emplace_back(Variable::y(k), a);
      }
      if (!seen.emplace(std::move(key), rhs).second) return true;
      CutOrigin o;
      o.facility = i;
      o.subset = s;
      o.gamma = gamma;
      cuts.push_back(make_cut(CutKind::kCapacity, std::move(terms),
                              Sense::kGreaterEqual, rhs, std::move(o)));
      return true;
    });
  }
  return cuts;
}

std::vector<LinearCut> ssp_cuts(const CoverageContext& ctx,
                                bool keep_dominated) {
  std::vector<LinearCut> cuts;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    const auto cover = ctx.customers_of(i);
    if (cover.empty()) continue;
    const Units cap = ctx.capacity(i);
    const Units tight = tightened_capacity(ctx, i);
    if (keep_dominated || tight < cap) {
      std::vector<Term> terms;
      for (int j : cover) terms.push_back({Variable::x(i, j), ctx.demand(j)});
      terms.push_back({Variable::y(i), -tight});
      CutOrigin o;
      o.facility = i;
      cuts.push_back(make_cut(CutKind::kSspCapacity, std::move(terms),
                              Sense::kLessEqual, 0, o));
    }
    for (int k : cover) {
      const BetaPair beta = beta_pair(ctx, i, k);
      const Units lifted = cap - beta.included;
      if (!keep_dominated && lifted == ctx.demand(k)) continue;
      std::vector<Term> terms;
      for (int j : cover) {
        terms.push_back({Variable::x(i, j), j == k ? lifted : ctx.demand(j)});
      }
      terms.push_back({Variable::y(i), -cap});
      CutOrigin o;
      o.facility = i;
      o.customer = k;
      cuts.push_back(make_cut(CutKind::kSspDemand, std::move(terms),
                              Sense::kLessEqual, 0, o));
    }
  }
  return cuts;
}

std::vector<LinearCut> disjunctive_ssp_cuts(const CoverageContext& ctx,
                                            bool keep_dominated) {
  std::vector<LinearCut> cuts;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    const auto cover = ctx.customers_of(i);
    if (cover.empty()) continue;
    const Units cap = ctx.capacity(i);
    const Units tight = tightened_capacity(ctx, i);
    for (int k : cover) {
      const BetaPair beta = beta_pair(ctx, i, k);
      const bool tighter =
          beta.excluded < tight || beta.included < cap - ctx.demand(k);
      if (!keep_dominated && !tighter) continue;
      std::vector<Term> terms;
      for (int j : cover) {
        terms.push_back({Variable::x(i, j),
                         j == k ? beta.excluded - beta.included
                                : ctx.demand(j)});
      }
      terms.push_back({Variable::y(i), -beta.excluded});
      CutOrigin o;
      o.facility = i;
      o.customer = k;
      cuts.push_back(make_cut(CutKind::kDisjunctiveSsp, std::move(terms),
                              Sense::kLessEqual, 0, o));
    }
  }
  return cuts;
}

CutSet resolve_conflicts(CutSet set) {
  std::set<Variable> symmetric;
  for (const LinearCut& c : set.cuts) {
    if (c.kind != CutKind::kSymmetry) continue;
    for (const Term& t : c.terms) symmetric.insert(t.var);
  }
  if (symmetric.empty()) return set;
  std::erase_if(set.cuts, [&](const LinearCut& c) {
    if (c.kind != CutKind::kForcing && c.kind != CutKind::kSurplus) {
      return false;
    }
    return std::any_of(c.terms.begin(), c.terms.end(), [&](const Term& t) {
      return symmetric.count(t.var) > 0;
    });
  });
  return set;
}

CutSet generate_cuts(const CoverageContext& ctx, const CutOptions& options) {
  CutSet set;
  auto append = [&](std::vector<LinearCut> cuts) {
    for (auto& c : cuts) set.cuts.push_back(std::move(c));
  };
  append(linking_cuts(ctx));
  append(domination_cuts(ctx));
  append(forcing_cuts(ctx));
  append(surplus_cuts(ctx, options.surplus));
  append(symmetry_cuts(ctx));
  append(capacity_cuts(ctx, options.keep_dominated));
  append(ssp_cuts(ctx, options.keep_dominated));
  append(disjunctive_ssp_cuts(ctx, options.keep_dominated));
  return resolve_conflicts(std::move(set));
}

}  // namespace cpcp
