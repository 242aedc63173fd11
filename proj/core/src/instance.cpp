#include "cpcp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cpcp/error.hpp"

namespace cpcp {

std::string_view to_string(DistanceMode mode) {
  switch (mode) {
    case DistanceMode::kEuclidFloorInt:
      return "coord-int";
    case DistanceMode::kEuclidFloat:
      return "coord-float";
    case DistanceMode::kExplicitMatrix:
      return "matrix";
  }
  return "matrix";
}

std::optional<DistanceMode> parse_distance_mode(std::string_view token) {
  if (token == "coord-int") return DistanceMode::kEuclidFloorInt;
  if (token == "coord-float") return DistanceMode::kEuclidFloat;
  if (token == "matrix") return DistanceMode::kExplicitMatrix;
  return std::nullopt;
}

Distance euclidean(const Point& a, const Point& b, DistanceMode mode) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  return mode == DistanceMode::kEuclidFloorInt ? std::floor(d) : d;
}

Instance::Instance(std::vector<Units> demands, std::vector<Units> capacities,
                   int p, std::vector<Distance> distances, DistanceMode mode)
    : demands_(std::move(demands)),
      capacities_(std::move(capacities)),
      p_(p),
      distances_(std::move(distances)),
      mode_(mode) {
  validate();
  for (Units q : demands_) total_demand_ += q;
}

Instance Instance::from_points(std::vector<Point> points,
                               std::vector<Units> demands,
                               std::vector<Units> capacities, int p,
                               DistanceMode mode) {
  if (mode == DistanceMode::kExplicitMatrix) {
    throw Error("from_points requires a coordinate distance mode");
  }
  const std::size_t n = points.size();
  if (demands.size() != n || capacities.size() != n) {
    throw Error("one demand and one capacity per vertex required");
  }
  std::vector<Distance> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = euclidean(points[i], points[j], mode);
    }
  }
  Instance inst(std::move(demands), std::move(capacities), p, std::move(d),
                mode);
  inst.points_ = std::move(points);
  return inst;
}

void Instance::validate() const {
  if (demands_.empty()) throw Error("instance has no customers");
  if (capacities_.empty()) throw Error("instance has no facilities");
  for (std::size_t j = 0; j < demands_.size(); ++j) {
    if (demands_[j] < 1) {
      throw Error("non-positive demand for customer " + std::to_string(j + 1));
    }
  }
  for (std::size_t i = 0; i < capacities_.size(); ++i) {
    if (capacities_[i] < 1) {
      throw Error("non-positive capacity for facility " +
                  std::to_string(i + 1));
    }
  }
  if (p_ < 1 || p_ > num_facilities()) throw Error("p out of range");
  if (distances_.size() != demands_.size() * capacities_.size()) {
    throw Error("distance table must have m rows of n values");
  }
  for (Distance d : distances_) {
    if (!std::isfinite(d) || d < 0) {
      throw Error("distances must be finite and non-negative");
    }
  }
}

Distance Instance::max_distance() const {
  return *std::max_element(distances_.begin(), distances_.end());
}

Instance Instance::with_p(int p) const {
  Instance copy = *this;
  copy.p_ = p;
  copy.validate();
  return copy;
}

std::string format_number(double value) {
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

struct LineReader {
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-blank, non-comment line split into tokens.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      tokens.clear();
      std::size_t k = 0;
      while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k >= line.size()) break;
        std::size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        tokens.push_back(line.substr(start, k - start));
      }
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

template <typename T>
T parse_token(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("invalid ") + what + " '" +
                               std::string(token) + "'");
  }
  return value;
}

void expect_count(const std::vector<std::string_view>& tokens,
                  std::size_t count, std::size_t line, const char* what) {
  if (tokens.size() != count) {
    throw ParseError(line, std::string("expected ") + std::to_string(count) +
                               " values for " + what + ", found " +
                               std::to_string(tokens.size()));
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw ParseError(0, "empty instance file");
  const std::size_t header_line = reader.line();
  if (tok.size() != 3 && tok.size() != 4) {
    throw ParseError(header_line, "malformed header, expected 'n m p mode'");
  }
  const int n = parse_token<int>(tok[0], header_line, "customer count");
  const int m = parse_token<int>(tok[1], header_line, "facility count");
  const int p = parse_token<int>(tok[2], header_line, "p");
  DistanceMode mode = DistanceMode::kEuclidFloorInt;
  if (tok.size() == 4) {
    auto parsed = parse_distance_mode(tok[3]);
    if (!parsed) {
      throw ParseError(header_line,
                       "unknown mode '" + std::string(tok[3]) + "'");
    }
    mode = *parsed;
  }
  if (n < 1 || m < 1) {
    throw ParseError(header_line, "malformed header, n and m must be >= 1");
  }
  if (p < 1 || p > m) throw ParseError(header_line, "p out of range");

  auto need_line = [&](const char* what) {
    if (!reader.next(tok)) {
      throw ParseError(reader.line() + 1, std::string("missing ") + what);
    }
  };
  auto positive = [&](Units v, const char* what) {
    if (v < 1) {
      throw ParseError(reader.line(), std::string("non-positive ") + what);
    }
    return v;
  };

  std::vector<Units> q;
  std::vector<Units> cap;
  if (mode != DistanceMode::kExplicitMatrix) {
    if (m != n) {
      throw ParseError(header_line, "coordinate modes require m == n");
    }
    std::vector<Point> points;
    for (int v = 0; v < n; ++v) {
      need_line("vertex row");
      expect_count(tok, 4, reader.line(), "'x y q Q'");
      Point pt{parse_token<double>(tok[0], reader.line(), "coordinate"),
               parse_token<double>(tok[1], reader.line(), "coordinate")};
      q.push_back(positive(parse_token<Units>(tok[2], reader.line(), "demand"),
                           "demand"));
      cap.push_back(positive(
          parse_token<Units>(tok[3], reader.line(), "capacity"), "capacity"));
      points.push_back(pt);
    }
    if (reader.next(tok)) throw ParseError(reader.line(), "trailing data");
    return Instance::from_points(std::move(points), std::move(q),
                                 std::move(cap), p, mode);
  }

  for (int j = 0; j < n; ++j) {
    need_line("demand row");
    expect_count(tok, 1, reader.line(), "demand");
    q.push_back(positive(parse_token<Units>(tok[0], reader.line(), "demand"),
                         "demand"));
  }
  for (int i = 0; i < m; ++i) {
    need_line("capacity row");
    expect_count(tok, 1, reader.line(), "capacity");
    cap.push_back(positive(
        parse_token<Units>(tok[0], reader.line(), "capacity"), "capacity"));
  }
  std::vector<Distance> d;
  d.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < m; ++i) {
    need_line("distance row");
    expect_count(tok, static_cast<std::size_t>(n), reader.line(),
                 "distance row");
    for (auto t : tok) {
      const double v = parse_token<double>(t, reader.line(), "distance");
      if (!std::isfinite(v) || v < 0) {
        throw ParseError(reader.line(), "distance must be finite and >= 0");
      }
      d.push_back(v);
    }
  }
  if (reader.next(tok)) throw ParseError(reader.line(), "trailing data");
  return Instance(std::move(q), std::move(cap), p, std::move(d), mode);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  const int n = inst.num_customers();
  const int m = inst.num_facilities();
  out << n << ' ' << m << ' ' << inst.p() << ' ' << to_string(inst.mode())
      << '\n';
  if (inst.mode() != DistanceMode::kExplicitMatrix) {
    for (int v = 0; v < n; ++v) {
      const Point& pt = inst.points()[v];
      out << format_number(pt.x) << ' ' << format_number(pt.y) << ' '
          << inst.demand(v) << ' ' << inst.capacity(v) << '\n';
    }
    return out.str();
  }
  for (int j = 0; j < n; ++j) out << inst.demand(j) << '\n';
  for (int i = 0; i < m; ++i) out << inst.capacity(i) << '\n';
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_number(inst.distance(i, j));
    }
    out << '\n';
  }
  return out.str();
}

void save_instance(const Instance& instance,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << format_instance(instance);
}

}  // namespace cpcp
