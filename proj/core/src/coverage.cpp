#include "cpcp/coverage.hpp"

#include <algorithm>

namespace cpcp {

CoverageContext::CoverageContext(const Instance& instance, Distance radius)
    : instance_(&instance),
      radius_(radius),
      cover_(instance.num_facilities()),
      coverers_(instance.num_customers()),
      covered_(static_cast<std::size_t>(instance.num_facilities()) *
                   instance.num_customers(),
               0),
      delta_(instance.num_facilities(), 0),
      kappa_(instance.num_facilities(), 0) {
  const int m = instance.num_facilities();
  const int n = instance.num_customers();
  for (int i = 0; i < m; ++i) {
    const Units cap = instance.capacity(i);
    for (int j = 0; j < n; ++j) {
      if (instance.distance(i, j) <= radius && instance.demand(j) <= cap) {
        cover_[i].push_back(j);
        coverers_[j].push_back(i);
        covered_[static_cast<std::size_t>(i) * n + j] = 1;
        delta_[i] += instance.demand(j);
      }
    }
    kappa_[i] = std::min(delta_[i], cap);
  }
}

}  // namespace cpcp
