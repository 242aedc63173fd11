#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cpcp/instance.hpp"

namespace cpcp {

// Facility budget rule for generated instances: p = floor(n / k).
enum class PRule { kTenth, kSeventh, kQuarter, kThird };

std::string_view to_string(PRule rule);  // "n10", "n7", "n4", "n3"
std::optional<PRule> parse_p_rule(std::string_view token);
int budget_for(int n, PRule rule);

struct GeneratorConfig {
  int n = 50;
  PRule rule = PRule::kTenth;
  std::uint64_t seed = 1;
  bool integer_distances = true;
};

// Random vertex instance with C = F: coordinates uniform in [1, sqrt(100 n)],
// integer demands uniform in [1, 20], p = floor(n / k) and homogeneous
// capacities ceil(12 n / p). Deterministic for a fixed config. Requires n >= 2
// and a rule yielding p >= 1.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace cpcp
