#include "cpcp/arc_flow.hpp"

#include <algorithm>

namespace cpcp {

ArcFlowGraph build_arcflow_graph(const CoverageContext& ctx, int i) {
  ArcFlowGraph g;
  g.facility = i;
  g.capacity = ctx.capacity(i);
  const auto cover = ctx.customers_of(i);
  g.ordering.assign(cover.begin(), cover.end());
  std::stable_sort(g.ordering.begin(), g.ordering.end(), [&](int a, int b) {
    return ctx.demand(a) > ctx.demand(b);
  });

  const Units cap = g.capacity;
  std::vector<char> reachable(static_cast<std::size_t>(cap) + 1, 0);
  reachable[0] = 1;
  std::vector<CustomerArc> arcs_of_customer;
  for (int j : g.ordering) {
    const Units q = ctx.demand(j);
    arcs_of_customer.clear();
    // Descending tails so that only fillings reachable before j are used.
    for (Units e = cap - q; e >= 0; --e) {
      if (!reachable[e]) continue;
      arcs_of_customer.push_back({e, e + q, j});
      reachable[e + q] = 1;
    }
    g.customer_arcs.insert(g.customer_arcs.end(), arcs_of_customer.rbegin(),
                           arcs_of_customer.rend());
  }
  for (Units e = 0; e <= cap; ++e) {
    if (reachable[e] || e == cap) g.nodes.push_back(e);
    if (reachable[e] && e < cap) g.loss_arcs.push_back({e, cap});
  }
  return g;
}

}  // namespace cpcp
