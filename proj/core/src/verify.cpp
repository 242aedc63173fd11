#include "cpcp/verify.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace cpcp {

WitnessCheck verify_witness(const Instance& inst, Distance r, int p,
                            std::span<const int> assignment,
                            std::span<const int> open_set) {
  const int m = inst.num_facilities();
  const int n = inst.num_customers();
  auto fail = [](std::string reason) { return WitnessCheck{false, reason}; };
  if (static_cast<int>(assignment.size()) != n) {
    return fail("assignment covers " + std::to_string(assignment.size()) +
                " customers, expected " + std::to_string(n));
  }
  std::set<int> open;
  for (int i : open_set) {
    if (i < 0 || i >= m) return fail("open facility index out of range");
    open.insert(i);
  }
  if (static_cast<int>(open.size()) > p) {
    return fail(std::to_string(open.size()) + " facilities open, budget " +
                std::to_string(p));
  }
  std::vector<Units> load(m, 0);
  for (int j = 0; j < n; ++j) {
    const int i = assignment[j];
    const std::string who = "customer " + std::to_string(j + 1);
    if (i < 0 || i >= m) return fail(who + " is unassigned");
    if (!open.contains(i)) {
      return fail(who + " assigned to closed facility " +
                  std::to_string(i + 1));
    }
    if (inst.distance(i, j) > r) {
      return fail(who + " is beyond the radius");
    }
    load[i] += inst.demand(j);
  }
  for (int i = 0; i < m; ++i) {
    if (load[i] > inst.capacity(i)) {
      return fail("facility " + std::to_string(i + 1) + " over capacity");
    }
  }
  return {true, {}};
}

Distance assignment_radius(const Instance& inst,
                           std::span<const int> assignment) {
  Distance worst = 0.0;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    worst = std::max(worst, inst.distance(assignment[j], static_cast<int>(j)));
  }
  return worst;
}

}  // namespace cpcp
