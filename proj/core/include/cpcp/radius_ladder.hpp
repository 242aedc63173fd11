#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cpcp/instance.hpp"

namespace cpcp {

// Strictly increasing distinct distances z_1 < ... < z_D of an instance.
// Index 0 is a sentinel standing for "below z_1" and has no value. Doubles
// are distinct unless bit-identical; no epsilon merging.
class RadiusLadder {
 public:
  explicit RadiusLadder(const Instance& instance);
  // Values are sorted and deduplicated.
  explicit RadiusLadder(std::vector<Distance> values);

  std::size_t size() const { return values_.size(); }  // D

  // z_k for k in 1..D.
  Distance operator[](std::size_t k) const { return values_.at(k - 1); }
  Distance value(std::size_t k) const { return (*this)[k]; }

  // k such that z_k == r exactly.
  std::optional<std::size_t> index_of(Distance r) const;

  // Largest k with z_k <= r, 0 when r < z_1.
  std::size_t floor_index(Distance r) const;

  std::span<const Distance> values() const { return values_; }

 private:
  std::vector<Distance> values_;
};

}  // namespace cpcp
