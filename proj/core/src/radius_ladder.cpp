#include "cpcp/radius_ladder.hpp"

#include <algorithm>

namespace cpcp {

RadiusLadder::RadiusLadder(const Instance& instance)
    : RadiusLadder(std::vector<Distance>(instance.distances().begin(),
                                         instance.distances().end())) {}

RadiusLadder::RadiusLadder(std::vector<Distance> values)
    : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

std::optional<std::size_t> RadiusLadder::index_of(Distance r) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), r);
  if (it == values_.end() || *it != r) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin()) + 1;
}

std::size_t RadiusLadder::floor_index(Distance r) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), r);
  return static_cast<std::size_t>(it - values_.begin());
}

}  // namespace cpcp
