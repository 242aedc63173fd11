#pragma once

#include <vector>

#include "cpcp/coverage.hpp"

namespace cpcp {

struct CustomerArc {
  Units tail = 0;
  Units head = 0;
  int customer = 0;

  friend bool operator==(const CustomerArc&, const CustomerArc&) = default;
};

struct LossArc {
  Units tail = 0;
  Units head = 0;

  friend bool operator==(const LossArc&, const LossArc&) = default;
};

// Acyclic multigraph over partial fillings 0..Q_i of one facility. Customers
// of C_i^r are processed by non-increasing demand (ties by index); arcs of a
// customer start only at fillings reachable with the customers before it.
// Every reachable filling below Q_i has a loss arc to Q_i, and Q_i itself is
// always a node.
struct ArcFlowGraph {
  int facility = 0;
  Units capacity = 0;
  std::vector<int> ordering;
  std::vector<Units> nodes;  // ascending
  std::vector<CustomerArc> customer_arcs;
  std::vector<LossArc> loss_arcs;

  std::size_t num_arcs() const {
    return customer_arcs.size() + loss_arcs.size();
  }
};

ArcFlowGraph build_arcflow_graph(const CoverageContext& ctx, int i);

}  // namespace cpcp
