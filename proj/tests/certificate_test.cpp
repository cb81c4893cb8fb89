#include "shapley/certificate.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "shapley/error.hpp"
#include "shapley/exact.hpp"

namespace shapley {
namespace {

using testing::named_path;
using testing::y_instance;
using testing::y_star_profile;

// n players starting at s, sharing the path s-a-t (edges 1 and 2); a costlier bypass s-t.
GameInstance shared_path_instance(std::size_t n) {
  Graph g({"s", "a", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(2));
  g.add_edge(0, 2, Rational(9));
  return GameInstance(std::move(g), std::vector<Player>(n, Player{0, 2}), VertexId{2});
}

StrategyProfile all_on(const GameInstance& inst, const Path& p) {
  return StrategyProfile{std::vector<Path>(inst.player_count(), p)};
}

Tree star_tree(const GameInstance& y) {
  const std::vector<EdgeId> star{0, 1, 2};
  return Tree::build(y.graph(), star, 3);
}

TEST(FrequencyProfileTest, Examples) {
  const GameInstance y = y_instance();
  const FrequencyProfile f = frequency_profile(y, y_star_profile(y));
  EXPECT_EQ(f.f_hist, (std::map<std::uint32_t, Rational>{{1, Rational(2)}, {2, Rational(2)}}));
  EXPECT_EQ(f.g_tail, (std::map<std::uint32_t, Rational>{{1, Rational(4)}, {2, Rational(2)}}));
  EXPECT_EQ(f.nash_cost, Rational(4));
  EXPECT_EQ(f.n_half, 2u);

  const GameInstance one = testing::single_edge_instance(Rational(3));
  const FrequencyProfile f1 = frequency_profile(one, {{named_path(one.graph(), {"s", "t"})}});
  EXPECT_EQ(f1.f_hist, (std::map<std::uint32_t, Rational>{{1, Rational(3)}}));
  EXPECT_EQ(f1.n_half, 1u);

  const GameInstance shared = shared_path_instance(4);
  const FrequencyProfile f4 = frequency_profile(shared, all_on(shared, named_path(shared.graph(), {"s", "a", "t"})));
  EXPECT_EQ(f4.f_hist, (std::map<std::uint32_t, Rational>{{4, Rational(3)}}));
  EXPECT_EQ(f4.n_half, 4u);
  EXPECT_EQ(f4.g(5), Rational(0));
}

TEST(EquilibriumTreeTest, RejectsCyclicUnion) {
  const GameInstance y = y_instance();
  const StrategyProfile cyclic{{named_path(y.graph(), {"s1", "m", "t"}), named_path(y.graph(), {"s2", "m", "s1", "t"})}};
  EXPECT_THROW(EquilibriumTree(y, cyclic), PremiseError);
  EXPECT_NO_THROW(EquilibriumTree(y, testing::y_mixed_profile(y)));
}

TEST(PairTermTest, Examples) {
  const GameInstance y = y_instance();
  const EquilibriumTree nt(y, y_star_profile(y));
  ASSERT_EQ(nt.positions(), 3u);
  EXPECT_EQ(nt.source(0), 3u);
  EXPECT_EQ(pair_term_A(nt, 1, 2), Rational(1));
  EXPECT_EQ(pair_term_A(nt, 0, 1), Rational(5, 6));
  EXPECT_EQ(pair_term_A(nt, 1, 0), Rational(5, 6));

  const GameInstance shared = shared_path_instance(2);
  const EquilibriumTree st(shared, all_on(shared, named_path(shared.graph(), {"s", "a", "t"})));
  EXPECT_EQ(pair_term_A(st, 1, 2), Rational(0));
}

TEST(DeviationInequalityTest, Examples) {
  const GameInstance y = y_instance();
  const EquilibriumTree nt(y, y_star_profile(y));
  const auto recs = deviation_inequality_check(nt, 1, 2);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[2].name, "pair_bound[1,2]");
  EXPECT_EQ(recs[2].lhs, Rational(1));
  EXPECT_EQ(recs[2].rhs, Rational(4));
  for (const auto& r : recs) EXPECT_EQ(r.status, CheckStatus::kPass) << r.name;

  const auto dummy = deviation_inequality_check(nt, 0, 1);
  EXPECT_EQ(dummy[2].lhs, Rational(5, 6));
  EXPECT_EQ(dummy[2].rhs, Rational(4));
  EXPECT_EQ(dummy[2].status, CheckStatus::kPass);

  const GameInstance shared = shared_path_instance(2);
  const EquilibriumTree st(shared, all_on(shared, named_path(shared.graph(), {"s", "a", "t"})));
  const auto same = deviation_inequality_check(st, 1, 2);
  EXPECT_EQ(same[2].lhs, Rational(0));
  EXPECT_EQ(same[2].rhs, Rational(0));
  EXPECT_EQ(same[2].status, CheckStatus::kPass);
}

TEST(EulerOrderBoundTest, Examples) {
  const GameInstance y = y_instance();
  const EulerOrderCheck e = euler_order_bound_check(y, star_tree(y));
  EXPECT_EQ(e.phi, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(e.distance_sum, Rational(6));
  EXPECT_EQ(e.record.rhs, Rational(8));
  EXPECT_EQ(e.record.status, CheckStatus::kPass);

  const GameInstance one = testing::single_edge_instance(Rational(3));
  const std::vector<EdgeId> edge{0};
  const EulerOrderCheck e1 = euler_order_bound_check(one, Tree::build(one.graph(), edge, 1));
  EXPECT_EQ(e1.distance_sum, Rational(6));
  EXPECT_EQ(e1.record.rhs, Rational(6));
  EXPECT_EQ(e1.record.status, CheckStatus::kPass);

  Graph g({"s", "t"});
  g.add_edge(0, 1, Rational(1));
  const GameInstance at_sink(g, {{1, 1}, {1, 1}});
  const EulerOrderCheck e0 = euler_order_bound_check(at_sink, Tree::build(at_sink.graph(), {}, 1));
  EXPECT_EQ(e0.distance_sum, Rational(0));
  EXPECT_EQ(e0.record.status, CheckStatus::kPass);
}

TEST(CoverageTest, YInstanceHoldsWithEquality) {
  const GameInstance y = y_instance();
  const EquilibriumTree nt(y, y_star_profile(y));
  const EulerOrderCheck e = euler_order_bound_check(y, star_tree(y));
  const auto recs = coverage_lower_bound_check(nt, e.phi);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].name, "coverage");
  EXPECT_EQ(recs[0].lhs, Rational(8, 3));
  EXPECT_EQ(recs[0].rhs, Rational(8, 3));
  for (const auto& r : recs) EXPECT_EQ(r.status, CheckStatus::kPass) << r.name;
}

TEST(CoverageTest, SinglePlayerAndZeroCase) {
  const GameInstance one = testing::single_edge_instance(Rational(3));
  const EquilibriumTree nt(one, {{named_path(one.graph(), {"s", "t"})}});
  const auto recs = coverage_lower_bound_check(nt, {0, 1});
  EXPECT_EQ(recs[0].lhs, Rational(3));
  EXPECT_EQ(recs[0].rhs, Rational(3));

  Graph g({"s", "t"});
  g.add_edge(0, 1, Rational(1));
  const GameInstance at_sink(g, {{1, 1}});
  const EquilibriumTree zt(at_sink, {{Path::trivial(1)}});
  const auto zero = coverage_lower_bound_check(zt, {0, 1});
  EXPECT_EQ(zero[0].lhs, Rational(0));
  EXPECT_EQ(zero[0].rhs, Rational(0));
  EXPECT_EQ(zero[0].status, CheckStatus::kPass);
}

TEST(PotentialSandwichTest, Examples) {
  const GameInstance y = y_instance();
  const auto prof = y_star_profile(y);
  const auto recs = potential_sandwich_check(y, prof, prof, frequency_profile(y, prof));
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].lhs, Rational(5));
  EXPECT_EQ(recs[0].rhs, Rational(5));
  EXPECT_EQ(recs[1].rhs, Rational(3));
  EXPECT_EQ(recs[2].rhs, Rational(3));
  EXPECT_EQ(recs[3].lhs, Rational(5));
  EXPECT_EQ(recs[3].rhs, Rational(6));
  for (const auto& r : recs) EXPECT_EQ(r.status, CheckStatus::kPass) << r.name;

  const GameInstance shared = shared_path_instance(3);
  const auto p3 = all_on(shared, named_path(shared.graph(), {"s", "a", "t"}));
  const auto r3 = potential_sandwich_check(shared, p3, p3, frequency_profile(shared, p3));
  EXPECT_EQ(r3[3].lhs, r3[3].rhs);
  EXPECT_EQ(r3[3].lhs, Rational(3) * harmonic(3));
}

TEST(BoundReportTest, YInstance) {
  const GameInstance y = y_instance();
  const auto prof = y_star_profile(y);
  const CertificateReport r = bound_report(y, prof, prof);
  EXPECT_EQ(r.bound_value, Rational(2));
  EXPECT_EQ(r.actual_ratio, Rational(1));
  EXPECT_EQ(r.n_half, 2u);
  EXPECT_EQ(r.overall, Overall::kPass);
  ASSERT_NE(r.find("coverage"), nullptr);
  EXPECT_EQ(r.find("coverage")->lhs, Rational(8, 3));
  for (const auto& c : r.checks) EXPECT_EQ(c.status, CheckStatus::kPass) << c.name;
}

TEST(BoundReportTest, SinglePlayerAndSharedPath) {
  const GameInstance one = testing::single_edge_instance();
  const StrategyProfile p{{named_path(one.graph(), {"s", "t"})}};
  const CertificateReport r1 = bound_report(one, p, p);
  EXPECT_EQ(r1.bound_value, Rational(2));
  EXPECT_EQ(r1.actual_ratio, Rational(1));
  EXPECT_EQ(r1.overall, Overall::kPass);

  const GameInstance shared = shared_path_instance(5);
  const auto p5 = all_on(shared, named_path(shared.graph(), {"s", "a", "t"}));
  const CertificateReport r5 = bound_report(shared, p5, p5);
  EXPECT_EQ(r5.n_half, 5u);
  EXPECT_EQ(r5.actual_ratio, Rational(1));
  EXPECT_EQ(r5.overall, Overall::kPass);
}

TEST(BoundReportTest, PremiseErrors) {
  const GameInstance y = y_instance();
  const auto star = y_star_profile(y);
  // The mixed profile costs 5 > 4.
  EXPECT_THROW(bound_report(y, testing::y_mixed_profile(y), star), PremiseError);
  EXPECT_THROW(bound_report(y, star, testing::y_mixed_profile(y)), PremiseError);

  Graph g({"a", "b", "c"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  const GameInstance multi(g, {{0, 1}, {1, 2}});
  const StrategyProfile mp{{named_path(multi.graph(), {"a", "b"}), named_path(multi.graph(), {"b", "c"})}};
  EXPECT_THROW(bound_report(multi, mp, mp), PremiseError);
}

TEST(BoundReportTest, UnverifiedDynamicsMarksPremise) {
  const GameInstance y = y_instance();
  const auto star = y_star_profile(y);
  const CertificateReport r = bound_report(y, star, star, BoundOptions{false});
  EXPECT_FALSE(r.find("potential_nash_le_opt")->premise_verified);
}

// Two players share s-a, then split over parallel zero-cost a-t edges:
// stable, optimal in cost, but the union has a cycle.
TEST(BoundReportTest, NonTreeEquilibriumIsConditionalPass) {
  Graph g({"s", "a", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(0));
  g.add_edge(1, 2, Rational(0));
  const GameInstance inst(g, {{0, 2}, {0, 2}}, VertexId{2});
  const Graph& h = inst.graph();
  const StrategyProfile opt{{path_from_edges(h, 0, std::vector<EdgeId>{0, 1}), path_from_edges(h, 0, std::vector<EdgeId>{0, 1})}};
  const StrategyProfile split{{path_from_edges(h, 0, std::vector<EdgeId>{0, 1}), path_from_edges(h, 0, std::vector<EdgeId>{0, 2})}};
  ASSERT_TRUE(is_nash(inst, split).is_nash);
  const CertificateReport r = bound_report(inst, opt, split);
  EXPECT_FALSE(r.nash_is_tree);
  EXPECT_EQ(r.overall, Overall::kConditionalPass);
  EXPECT_EQ(r.find("coverage")->status, CheckStatus::kSkip);
  EXPECT_EQ(r.find("harmonic_bound")->status, CheckStatus::kPass);
  EXPECT_EQ(r.actual_ratio, Rational(1));

  const TreeifyResult fixed = treeify(inst, split);
  EXPECT_TRUE(fixed.changed);
  EXPECT_EQ(bound_report(inst, opt, fixed.profile).overall, Overall::kPass);
}

TEST(CertifyTest, YInstance) {
  const Certification c = certify(y_instance());
  EXPECT_EQ(c.report.overall, Overall::kPass);
  EXPECT_EQ(c.report.bound_value, Rational(2));
  EXPECT_EQ(c.trace.iterations, 0u);
  EXPECT_FALSE(c.treeified);
}

// Every check of the argument holds on random single-sink instances, A is
// symmetric and every pair inequality passes.
TEST(CertificateProperty, RandomInstancesPass) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const GameInstance inst = testing::random_single_sink(rng, 8, 1 + trial % 6, 5, 6);
    const Certification c = certify(inst);
    EXPECT_NE(c.report.overall, Overall::kFail);
    EXPECT_LE(c.report.actual_ratio, c.report.bound_value);
    EXPECT_LE(c.report.actual_ratio, harmonic(inst.player_count()));
    EXPECT_TRUE(is_nash(inst, c.nash).is_nash);
    for (const auto& r : c.report.checks) EXPECT_NE(r.status, CheckStatus::kFail) << r.name;
    if (!c.report.nash_is_tree) continue;
    const EquilibriumTree nt(inst, c.nash);
    for (std::size_t i = 0; i < nt.positions(); ++i) {
      for (std::size_t j = 0; j < nt.positions(); ++j) {
        EXPECT_EQ(pair_term_A(nt, i, j), pair_term_A(nt, j, i));
      }
    }
  }
}

}  // namespace
}  // namespace shapley
