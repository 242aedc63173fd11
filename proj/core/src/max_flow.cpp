#include "cpcp/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cpcp {

MaxFlow::MaxFlow(int num_nodes) { reset(num_nodes); }

void MaxFlow::reset(int num_nodes) {
  edges_.clear();
  adjacency_.assign(num_nodes, {});
}

int MaxFlow::add_node() {
  adjacency_.emplace_back();
  return num_nodes() - 1;
}

int MaxFlow::add_edge(int from, int to, Cap capacity) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, capacity});
  edges_.push_back({from, 0, 0});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

MaxFlow::Cap MaxFlow::flow(int edge) const {
  return edges_[edge].original - edges_[edge].cap;
}

void MaxFlow::set_capacity(int edge, Cap capacity) {
  // Keeps the current flow; callers only raise capacities or reset to a
  // value above the flow already routed.
  const Cap routed = flow(edge);
  edges_[edge].original = capacity;
  edges_[edge].cap = capacity - routed;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adjacency_.size(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int id : adjacency_[u]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[u] + 1;
        queue.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

MaxFlow::Cap MaxFlow::push(int node, int sink, Cap limit) {
  if (node == sink) return limit;
  for (std::size_t& k = next_[node]; k < adjacency_[node].size(); ++k) {
    const int id = adjacency_[node][k];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[node] + 1) continue;
    const Cap pushed = push(e.to, sink, std::min(limit, e.cap));
    if (pushed > 0) {
      e.cap -= pushed;
      edges_[id ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Cap MaxFlow::augment(int source, int sink) {
  Cap total = 0;
  while (build_levels(source, sink)) {
    next_.assign(adjacency_.size(), 0);
    while (Cap f = push(source, sink, std::numeric_limits<Cap>::max())) {
      total += f;
    }
  }
  return total;
}

MaxFlow::Cap MaxFlow::solve(int source, int sink) {
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    edges_[id].cap = edges_[id].original;
  }
  return augment(source, sink);
}

std::vector<char> MaxFlow::source_side(int source) const {
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int id : adjacency_[u]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace cpcp
