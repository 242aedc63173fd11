#include "lagrangian.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace cpcp::detail {

namespace {

// Above this capacity the knapsack falls back to its fractional relaxation,
// which overestimates K_i and so keeps the bound valid.
constexpr Units kMaxTable = 8192;

}  // namespace

LagrangianBound::LagrangianBound(const CoverageContext& ctx,
                                 std::vector<FacilityRow> rows)
    : ctx_(ctx),
      rows_(std::move(rows)),
      w_(rows_.size(), 0.0),
      best_w_(rows_.size(), 0.0),
      row_gradient_(rows_.size(), 0.0),
      value_(ctx.num_facilities(), 0.0),
      best_value_(ctx.num_facilities(), 0.0),
      taken_(ctx.num_facilities()),
      subgradient_(ctx.num_customers(), 0.0),
      activity_(ctx.num_facilities(), 0.0) {
  Units widest = 1;
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    widest = std::max(widest, ctx.capacity(i));
  }
  u_.resize(ctx.num_customers());
  for (int j = 0; j < ctx.num_customers(); ++j) {
    u_[j] = static_cast<double>(ctx.demand(j)) / static_cast<double>(widest);
  }
  best_u_ = u_;
}

double LagrangianBound::knapsack(int i) {
  auto& taken = taken_[i];
  taken.clear();
  std::vector<int> items;
  Units weight = 0;
  double all = 0.0;
  for (int j : ctx_.customers_of(i)) {
    if (u_[j] <= 0.0) continue;
    items.push_back(j);
    weight += ctx_.demand(j);
    all += u_[j];
  }
  const Units cap = ctx_.capacity(i);
  if (weight <= cap) {
    for (int j : items) taken.emplace_back(j, 1.0);
    return all;
  }
  if (cap > kMaxTable) {
    std::sort(items.begin(), items.end(), [&](int a, int b) {
      return u_[a] * ctx_.demand(b) > u_[b] * ctx_.demand(a);
    });
    double value = 0.0;
    Units room = cap;
    for (int j : items) {
      if (room <= 0) break;
      const Units q = ctx_.demand(j);
      const double part =
          q <= room ? 1.0 : static_cast<double>(room) / static_cast<double>(q);
      taken.emplace_back(j, part);
      value += part * u_[j];
      room -= std::min(q, room);
    }
    return value;
  }

  const auto width = static_cast<std::size_t>(cap) + 1;
  const std::size_t words = (width + 63) / 64;
  table_.assign(width, 0.0);
  bits_.assign(items.size() * words, 0);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto q = static_cast<std::size_t>(ctx_.demand(items[k]));
    const double v = u_[items[k]];
    std::uint64_t* row = &bits_[k * words];
    for (std::size_t c = width - 1; c >= q; --c) {
      const double cand = table_[c - q] + v;
      if (cand > table_[c]) {
        table_[c] = cand;
        row[c / 64] |= std::uint64_t{1} << (c % 64);
      }
      if (c == q) break;
    }
  }
  std::size_t c = width - 1;
  for (std::size_t k = items.size(); k-- > 0;) {
    if (bits_[k * words + c / 64] >> (c % 64) & 1) {
      taken.emplace_back(items[k], 1.0);
      c -= static_cast<std::size_t>(ctx_.demand(items[k]));
    }
  }
  return table_[width - 1];
}

double LagrangianBound::evaluate(std::span<const signed char> status) {
  double bound = std::accumulate(u_.begin(), u_.end(), 0.0);
  std::fill(value_.begin(), value_.end(), 0.0);
  for (std::size_t c = 0; c < rows_.size(); ++c) {
    if (w_[c] <= 0.0) continue;
    bound += w_[c] * rows_[c].rhs;
    for (auto [i, a] : rows_[c].terms) value_[i] += w_[c] * a;
  }
  for (int i = 0; i < ctx_.num_facilities(); ++i) {
    if (status[i] < 0) {
      value_[i] = 0.0;
      taken_[i].clear();
      continue;
    }
    value_[i] += knapsack(i);
    bound += status[i] > 0 ? 1.0 - value_[i] : std::min(0.0, 1.0 - value_[i]);
  }
  return bound;
}

double LagrangianBound::improve(std::span<const signed char> status,
                                int iterations, double target,
                                double stop_above) {
  u_ = best_u_;
  w_ = best_w_;
  double current = evaluate(status);
  double best = current;
  best_value_ = value_;
  double theta = 1.0;
  int stall = 0;
  int rounds = 0;
  std::fill(activity_.begin(), activity_.end(), 0.0);
  for (int it = 0; it < iterations && best <= stop_above; ++it) {
    std::fill(subgradient_.begin(), subgradient_.end(), 1.0);
    ++rounds;
    for (int i = 0; i < ctx_.num_facilities(); ++i) {
      const bool active =
          status[i] > 0 || (status[i] == 0 && value_[i] > 1.0);
      if (!active) continue;
      activity_[i] += 1.0;
      for (auto [j, part] : taken_[i]) subgradient_[j] -= part;
    }
    for (std::size_t c = 0; c < rows_.size(); ++c) {
      double g = rows_[c].rhs;
      for (auto [i, a] : rows_[c].terms) {
        if (status[i] > 0 || (status[i] == 0 && value_[i] > 1.0)) g -= a;
      }
      row_gradient_[c] = g;
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < u_.size(); ++j) {
      if (u_[j] <= 0.0 && subgradient_[j] < 0.0) subgradient_[j] = 0.0;
      norm += subgradient_[j] * subgradient_[j];
    }
    for (std::size_t c = 0; c < rows_.size(); ++c) {
      if (w_[c] <= 0.0 && row_gradient_[c] < 0.0) row_gradient_[c] = 0.0;
      norm += row_gradient_[c] * row_gradient_[c];
    }
    if (norm < 1e-12) break;
    const double step = theta * std::max(target - current, 1e-3) / norm;
    for (std::size_t j = 0; j < u_.size(); ++j) {
      u_[j] = std::max(0.0, u_[j] + step * subgradient_[j]);
    }
    for (std::size_t c = 0; c < rows_.size(); ++c) {
      w_[c] = std::max(0.0, w_[c] + step * row_gradient_[c]);
    }
    current = evaluate(status);
    if (current > best + 1e-12) {
      best = current;
      best_u_ = u_;
      best_w_ = w_;
      best_value_ = value_;
      stall = 0;
    } else if (++stall >= 4) {
      theta *= 0.5;
      stall = 0;
      if (theta < 1e-3) break;
    }
  }
  if (rounds > 0) {
    for (double& a : activity_) a /= rounds;
  } else {
    for (int i = 0; i < ctx_.num_facilities(); ++i) {
      activity_[i] = status[i] > 0 || (status[i] == 0 && value_[i] > 1.0);
    }
  }
  return best;
}

}  // namespace cpcp::detail
