#pragma once

#include <span>
#include <vector>

#include "cpcp/instance.hpp"

namespace cpcp {

// Sets derived from an instance at coverage radius r:
//   C_i^r = { j : d_ij <= r and q_j <= Q_i }   (customers_of)
//   F_j^r = { i : d_ij <= r and q_j <= Q_i }   (facilities_of)
//   delta_i = sum of q_j over C_i^r, kappa_i = min(delta_i, Q_i).
// Index lists are sorted ascending. The instance must outlive the context.
class CoverageContext {
 public:
  CoverageContext(const Instance& instance, Distance radius);

  const Instance& instance() const { return *instance_; }
  Distance radius() const { return radius_; }
  int num_facilities() const { return instance_->num_facilities(); }
  int num_customers() const { return instance_->num_customers(); }
  Units demand(int j) const { return instance_->demand(j); }
  Units capacity(int i) const { return instance_->capacity(i); }
  Units total_demand() const { return instance_->total_demand(); }

  std::span<const int> customers_of(int i) const { return cover_[i]; }
  std::span<const int> facilities_of(int j) const { return coverers_[j]; }
  bool covers(int i, int j) const {
    return covered_[static_cast<std::size_t>(i) * num_customers() + j] != 0;
  }

  Units delta(int i) const { return delta_[i]; }
  Units kappa(int i) const { return kappa_[i]; }

 private:
  const Instance* instance_;
  Distance radius_;
  std::vector<std::vector<int>> cover_;
  std::vector<std::vector<int>> coverers_;
  std::vector<char> covered_;
  std::vector<Units> delta_;
  std::vector<Units> kappa_;
};

}  // namespace cpcp
