#pragma once

#include <span>
#include <string>

#include "cpcp/instance.hpp"

namespace cpcp {

struct WitnessCheck {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Checks a (open set, assignment) pair against the instance alone: every
// customer assigned to an open facility within distance r, no facility over
// capacity, at most p distinct open facilities.
WitnessCheck verify_witness(const Instance& instance, Distance r, int p,
                            std::span<const int> assignment,
                            std::span<const int> open_set);

// Largest assigned distance of a total assignment.
Distance assignment_radius(const Instance& instance,
                           std::span<const int> assignment);

}  // namespace cpcp
