#include "cpcp/generator.hpp"

#include <cmath>
#include <random>

#include "cpcp/error.hpp"

namespace cpcp {

std::string_view to_string(PRule rule) {
  switch (rule) {
    case PRule::kTenth:
      return "n10";
    case PRule::kSeventh:
      return "n7";
    case PRule::kQuarter:
      return "n4";
    case PRule::kThird:
      return "n3";
  }
  return "n10";
}

std::optional<PRule> parse_p_rule(std::string_view token) {
  if (token == "n10" || token == "n/10") return PRule::kTenth;
  if (token == "n7" || token == "n/7") return PRule::kSeventh;
  if (token == "n4" || token == "n/4") return PRule::kQuarter;
  if (token == "n3" || token == "n/3") return PRule::kThird;
  return std::nullopt;
}

int budget_for(int n, PRule rule) {
  switch (rule) {
    case PRule::kTenth:
      return n / 10;
    case PRule::kSeventh:
      return n / 7;
    case PRule::kQuarter:
      return n / 4;
    case PRule::kThird:
      return n / 3;
  }
  return 0;
}

namespace {

// Fixed mappings from the raw engine output so that generated files do not
// depend on the standard library's distribution implementations.
double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Units uniform_units(std::mt19937_64& rng, Units lo, Units hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Units>(rng() % span);
}

}  // namespace

Instance generate_instance(const GeneratorConfig& config) {
  if (config.n < 2) throw Error("generator requires n >= 2");
  const int p = budget_for(config.n, config.rule);
  if (p < 1) {
    throw Error("rule " + std::string(to_string(config.rule)) +
                " gives p = 0 for n = " + std::to_string(config.n));
  }
  std::mt19937_64 rng(config.seed);
  const double side = std::sqrt(100.0 * config.n);
  std::vector<Point> points(config.n);
  std::vector<Units> demands(config.n);
  for (int v = 0; v < config.n; ++v) {
    points[v].x = uniform_real(rng, 1.0, side);
    points[v].y = uniform_real(rng, 1.0, side);
    demands[v] = uniform_units(rng, 1, 20);
  }
  // ceil(12 n / p)
  const Units capacity = (12 * static_cast<Units>(config.n) + p - 1) / p;
  std::vector<Units> capacities(config.n, capacity);
  return Instance::from_points(std::move(points), std::move(demands),
                               std::move(capacities), p,
                               config.integer_distances
                                   ? DistanceMode::kEuclidFloorInt
                                   : DistanceMode::kEuclidFloat);
}

}  // namespace cpcp
