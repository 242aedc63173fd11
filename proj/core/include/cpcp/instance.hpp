#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpcp {

// Demand and capacity units.
using Units = std::int64_t;

// Assignment distances. Integer-mode instances store exact integral values.
using Distance = double;

enum class DistanceMode {
  kEuclidFloorInt,  // "coord-int": floor of the Euclidean distance
  kEuclidFloat,     // "coord-float": Euclidean distance as a double
  kExplicitMatrix,  // "matrix": distances read verbatim
};

std::string_view to_string(DistanceMode mode);
std::optional<DistanceMode> parse_distance_mode(std::string_view token);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// A capacitated p-center instance on a bipartite graph (F, C, E). Facilities
// are indexed 0..m-1 and customers 0..n-1; the distance table is dense and
// stored facility-major. Immutable after construction.
class Instance {
 public:
  // Explicit distance table, `distances` holds m rows of n values.
  Instance(std::vector<Units> demands, std::vector<Units> capacities, int p,
           std::vector<Distance> distances,
           DistanceMode mode = DistanceMode::kExplicitMatrix);

  // Vertex-based instance (C = F): one point per vertex, distances derived
  // from the coordinates according to `mode`.
  static Instance from_points(std::vector<Point> points,
                              std::vector<Units> demands,
                              std::vector<Units> capacities, int p,
                              DistanceMode mode);

  int num_customers() const { return static_cast<int>(demands_.size()); }
  int num_facilities() const { return static_cast<int>(capacities_.size()); }
  int p() const { return p_; }
  DistanceMode mode() const { return mode_; }

  Units demand(int j) const { return demands_[j]; }
  Units capacity(int i) const { return capacities_[i]; }
  std::span<const Units> demands() const { return demands_; }
  std::span<const Units> capacities() const { return capacities_; }
  Units total_demand() const { return total_demand_; }

  Distance distance(int i, int j) const {
    return distances_[static_cast<std::size_t>(i) * demands_.size() + j];
  }
  std::span<const Distance> distances() const { return distances_; }
  Distance max_distance() const;

  // Empty unless the instance was built from coordinates.
  std::span<const Point> points() const { return points_; }

  // Same data with a different facility budget.
  Instance with_p(int p) const;

 private:
  void validate() const;

  std::vector<Units> demands_;
  std::vector<Units> capacities_;
  int p_;
  std::vector<Distance> distances_;
  DistanceMode mode_;
  std::vector<Point> points_;
  Units total_demand_ = 0;
};

// Euclidean distance between two points, floored when `mode` is
// kEuclidFloorInt.
Distance euclidean(const Point& a, const Point& b, DistanceMode mode);

// Instance text format (see README): header "n m p mode", then either n
// lines "x y q Q" (coordinate modes, m == n) or, for "matrix", n demand
// lines, m capacity lines and m rows of n distances. Blank lines and lines
// starting with '#' are ignored. Throws ParseError with the line number.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
std::string format_instance(const Instance& instance);
void save_instance(const Instance& instance,
                   const std::filesystem::path& path);

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace cpcp
