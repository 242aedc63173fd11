#include "cpcp/subset_sum.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "cpcp/error.hpp"

namespace cpcp {

namespace {

// reachable |= reachable << shift, on a bitset of cap + 1 bits.
void shift_or(std::vector<std::uint64_t>& bits, Units shift) {
  const std::size_t word_shift = static_cast<std::size_t>(shift) / 64;
  const unsigned bit_shift = static_cast<unsigned>(shift % 64);
  for (std::size_t w = bits.size(); w-- > word_shift;) {
    const std::size_t src = w - word_shift;
    std::uint64_t v = bits[src] << bit_shift;
    if (bit_shift != 0 && src > 0) v |= bits[src - 1] >> (64 - bit_shift);
    bits[w] |= v;
  }
}

Units subset_sum_of(const CoverageContext& ctx, std::span<const int> customers,
                    int skip, Units cap) {
  std::vector<Units> weights;
  weights.reserve(customers.size());
  for (int j : customers) {
    if (j != skip) weights.push_back(ctx.demand(j));
  }
  return max_subset_sum(weights, cap);
}

}  // namespace

Units max_subset_sum(std::span<const Units> weights, Units cap) {
  if (cap <= 0 || weights.empty()) return 0;
  Units total = 0;
  for (Units w : weights) total += w;
  if (total <= cap) return total;

  const std::size_t words = static_cast<std::size_t>(cap) / 64 + 1;
  std::vector<std::uint64_t> bits(words, 0);
  bits[0] = 1;
  for (Units w : weights) {
    if (w <= 0 || w > cap) continue;
    shift_or(bits, w);
    // Clear bits beyond cap in the last word.
    const unsigned tail = static_cast<unsigned>(cap % 64) + 1;
    if (tail < 64) bits.back() &= (std::uint64_t{1} << tail) - 1;
    if ((bits[static_cast<std::size_t>(cap) / 64] >> (cap % 64)) & 1) {
      return cap;
    }
  }
  for (std::size_t w = words; w-- > 0;) {
    if (bits[w] != 0) {
      return static_cast<Units>(w * 64 + 63 - std::countl_zero(bits[w]));
    }
  }
  return 0;
}

Units tightened_capacity(const CoverageContext& ctx, int i) {
  return subset_sum_of(ctx, ctx.customers_of(i), -1, ctx.capacity(i));
}

BetaPair beta_pair(const CoverageContext& ctx, int i, int k) {
  if (!ctx.covers(i, k)) {
    throw ContractViolation("beta_pair requires k in C_i^r");
  }
  const auto cover = ctx.customers_of(i);
  BetaPair beta;
  beta.excluded = subset_sum_of(ctx, cover, k, ctx.capacity(i));
  beta.included =
      subset_sum_of(ctx, cover, k, ctx.capacity(i) - ctx.demand(k));
  return beta;
}

std::vector<Units> tightened_capacities(const CoverageContext& ctx) {
  std::vector<Units> out(ctx.num_facilities());
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    out[i] = tightened_capacity(ctx, i);
  }
  return out;
}

}  // namespace cpcp
