#pragma once

#include <cstdint>
#include <vector>

namespace cpcp {

// Dinic's blocking-flow max-flow on integer capacities. Small dense-ish
// networks (customers + facilities + 2) are the intended use.
class MaxFlow {
 public:
  using Cap = std::int64_t;

  explicit MaxFlow(int num_nodes = 0);

  void reset(int num_nodes);
  int add_node();
  // Returns the index of the forward edge.
  int add_edge(int from, int to, Cap capacity);

  Cap solve(int source, int sink);
  // Continues from the current flow (after adding edges or raising caps).
  Cap augment(int source, int sink);

  Cap flow(int edge) const;
  Cap residual(int edge) const { return edges_[edge].cap; }
  void set_capacity(int edge, Cap capacity);

  // Nodes reachable from `source` in the residual graph after solve().
  std::vector<char> source_side(int source) const;

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }

 private:
  struct Edge {
    int to;
    Cap cap;
    Cap original;
  };

  bool build_levels(int source, int sink);
  Cap push(int node, int sink, Cap limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace cpcp
