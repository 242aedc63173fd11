#include <gtest/gtest.h>

#include <random>

#include "cpcp/cscp_oracle.hpp"
#include "cpcp/max_flow.hpp"
#include "cpcp/radius_ladder.hpp"
#include "cpcp/verify.hpp"
#include "oracles.hpp"

namespace cpcp {
namespace {

TEST(MaxFlow, SmallNetwork) {
  MaxFlow net(4);
  const int a = net.add_edge(0, 1, 3);
  net.add_edge(0, 2, 2);
  net.add_edge(1, 2, 5);
  net.add_edge(1, 3, 2);
  const int last = net.add_edge(2, 3, 3);
  EXPECT_EQ(net.solve(0, 3), 5);
  EXPECT_EQ(net.flow(a) + 2, 5);
  EXPECT_EQ(net.flow(last), 3);
  const auto side = net.source_side(0);
  EXPECT_TRUE(side[0]);
  EXPECT_FALSE(side[3]);
}

TEST(MaxFlow, AugmentAfterRaise) {
  MaxFlow net(3);
  net.add_edge(0, 1, 10);
  const int out = net.add_edge(1, 2, 4);
  EXPECT_EQ(net.solve(0, 2), 4);
  net.set_capacity(out, 9);
  EXPECT_EQ(net.augment(0, 2), 5);
  EXPECT_EQ(net.flow(out), 9);
}

TEST(ProbeInfeasible, Examples) {
  // Two facilities with K = 10 each, p = 1 and demand 14.
  const Instance two({7, 7}, {10, 10}, 1, {0, 0, 0, 0});
  EXPECT_TRUE(probe_infeasible(CoverageContext(two, 0.0), 1));
  EXPECT_FALSE(probe_infeasible(CoverageContext(two, 0.0), 2));
  const Instance ex = testing::example_instance(1);
  EXPECT_TRUE(probe_infeasible(CoverageContext(ex, 1.0), 1));
}

TEST(SolveCscp, RelaxedLimitsFeasible) {
  const Instance inst = Instance::from_points(
      {{0, 0}, {3, 1}, {2, 5}, {7, 7}}, {2, 3, 4, 5}, {6, 6, 6, 6}, 4,
      DistanceMode::kEuclidFloorInt);
  const CoverageContext ctx(inst, inst.max_distance());
  const OracleResult res = solve_cscp(ctx, 4);
  ASSERT_EQ(res.status, OracleStatus::kFeasible);
  EXPECT_TRUE(verify_witness(inst, ctx.radius(), 4, *res.assignment, *res.open_set));
}

TEST(SolveCscp, FixtureMatchesEnumeration) {
  const Instance inst = testing::example_instance();
  for (int p = 1; p <= 5; ++p) {
    for (Distance r : {1.0, 2.0}) {
      const CoverageContext ctx(inst, r);
      const OracleResult res = solve_cscp(ctx, p);
      EXPECT_EQ(res.status == OracleStatus::kFeasible,
                testing::exhaustive_feasible(inst, r, p))
          << "p=" << p << " r=" << r;
      if (res.assignment) {
        EXPECT_TRUE(verify_witness(inst, r, p, *res.assignment, *res.open_set));
      } else {
        EXPECT_FALSE(res.open_set);
      }
    }
  }
}

TEST(SolveCscp, AgreesWithEnumerationEverywhere) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = testing::random_instance(rng, {2, 10});
    const RadiusLadder ladder(inst);
    for (int p = 1; p <= inst.num_facilities(); ++p) {
      bool seen_feasible = false;
      for (std::size_t k = 1; k <= ladder.size(); ++k) {
        const CoverageContext ctx(inst, ladder[k]);
        const OracleResult res = solve_cscp(ctx, p);
        const bool expect = testing::exhaustive_feasible(inst, ladder[k], p);
        ASSERT_EQ(res.status == OracleStatus::kFeasible, expect)
            << format_instance(inst) << "p=" << p << " r=" << ladder[k];
        if (probe_infeasible(ctx, p)) EXPECT_FALSE(expect);
        if (seen_feasible) EXPECT_TRUE(expect);
        seen_feasible = expect;
        if (expect) {
          EXPECT_TRUE(verify_witness(inst, ladder[k], p, *res.assignment,
                                     *res.open_set));
        }
      }
    }
  }
}

TEST(SolveCscp, Deterministic) {
  const Instance inst =
      testing::random_instance(*std::make_unique<std::mt19937_64>(5), {12, 12});
  const RadiusLadder ladder(inst);
  const CoverageContext ctx(inst, ladder[ladder.size() / 2]);
  const OracleResult a = solve_cscp(ctx, 3);
  const OracleResult b = solve_cscp(ctx, 3);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.assignment, b.assignment);
}

TEST(SolveCscp, NodeLimitTimesOut) {
  const Instance inst = testing::example_instance();
  SearchBudget budget;
  budget.node_limit = 0;
  const OracleResult res = solve_cscp(CoverageContext(inst, 1.0), 2, budget);
  EXPECT_EQ(res.status, OracleStatus::kTimedOut);
  EXPECT_FALSE(res.assignment);
}

TEST(Verify, RejectsBadWitnesses) {
  const Instance inst = testing::example_instance();
  const std::vector<int> open = {0, 1};
  auto check = [&](Distance r, int p, std::vector<int> assignment) {
    return verify_witness(inst, r, p, assignment, open).ok;
  };
  EXPECT_TRUE(check(1.0, 2, {1, 1, 0, 0, 0}));
  EXPECT_FALSE(check(1.0, 2, {1, 1, 0, 0}));
  EXPECT_FALSE(check(1.0, 1, {1, 1, 0, 0, 0}));
  EXPECT_FALSE(check(1.0, 2, {1, 1, 1, 0, 0}));  // d = 2
  EXPECT_FALSE(check(2.0, 2, {0, 0, 0, 0, 0}));  // load 14
  EXPECT_FALSE(check(1.0, 2, {2, 1, 0, 0, 0}));
  EXPECT_EQ(assignment_radius(inst, std::vector<int>{1, 1, 1, 0, 0}), 2.0);
}

}  // namespace
}  // namespace cpcp
