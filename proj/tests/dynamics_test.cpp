#include "shapley/dynamics.hpp"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shapley/error.hpp"
#include "shapley/exact.hpp"

namespace shapley {
namespace {

using testing::named_path;
using testing::y_instance;
using testing::y_star_profile;

GameInstance detour_instance() {
  Graph g({"s", "a", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  g.add_edge(0, 2, Rational(3));
  return GameInstance(std::move(g), {{0, 2}});
}

// Cycle s-a-t-b-s with unit costs and two players at s.
GameInstance square_instance() {
  Graph g({"s", "a", "b", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 3, Rational(1));
  g.add_edge(0, 2, Rational(1));
  g.add_edge(2, 3, Rational(1));
  return GameInstance(std::move(g), {{0, 3}, {0, 3}});
}

TEST(BetterResponseStepTest, Examples) {
  const GameInstance y = y_instance();
  EXPECT_FALSE(better_response_step(y, y_star_profile(y), Policy::kBestImprovement));

  const GameInstance d = detour_instance();
  const auto next = better_response_step(d, {{named_path(d.graph(), {"s", "t"})}}, Policy::kFirstImprovement);
  ASSERT_TRUE(next);
  EXPECT_EQ(next->paths[0], named_path(d.graph(), {"s", "a", "t"}));

  // s1 on s1-t, s2 alone on s2-m-t: s1 cannot improve, s2 drops to s2-t.
  const auto mixed = better_response_step(y, testing::y_mixed_profile(y), Policy::kBestImprovement);
  ASSERT_TRUE(mixed);
  EXPECT_EQ(mixed->paths[0], named_path(y.graph(), {"s1", "t"}));
  EXPECT_EQ(mixed->paths[1], named_path(y.graph(), {"s2", "t"}));
}

TEST(RunDynamicsTest, Examples) {
  const GameInstance y = y_instance();
  const DynamicsRun still = run_dynamics(y, y_star_profile(y), Policy::kBestImprovement);
  EXPECT_EQ(still.profile, y_star_profile(y));
  EXPECT_TRUE(still.trace.steps.empty());
  EXPECT_TRUE(still.trace.terminated);

  const GameInstance d = detour_instance();
  const DynamicsRun one = run_dynamics(d, {{named_path(d.graph(), {"s", "t"})}}, Policy::kBestImprovement);
  EXPECT_EQ(one.trace.steps.size(), 1u);
  EXPECT_EQ(one.profile.paths[0], shortest_path(d.graph(), 0, 2).path);
  EXPECT_EQ(one.trace.steps[0].potential_after, Rational(2));
}

TEST(RunDynamicsTest, CapExhaustionIsReportedNotThrown) {
  const GameInstance d = detour_instance();
  const StrategyProfile start{{named_path(d.graph(), {"s", "t"})}};
  EXPECT_THROW(run_dynamics(d, start, Policy::kBestImprovement, 0), InputError);

  // Two players on separate long detours need at least two moves.
  Graph g({"s", "a", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  g.add_edge(0, 2, Rational(5));
  const GameInstance two(g, {{0, 2}, {0, 2}});
  const Path direct = named_path(two.graph(), {"s", "t"});
  const DynamicsRun capped = run_dynamics(two, {{direct, direct}}, Policy::kBestImprovement, 1);
  EXPECT_FALSE(capped.trace.terminated);
  EXPECT_EQ(capped.trace.iterations, 1u);
  const DynamicsRun full = run_dynamics(two, {{direct, direct}}, Policy::kBestImprovement, 10);
  EXPECT_TRUE(full.trace.terminated);
}

TEST(DynamicsFromOptTest, Examples) {
  const GameInstance one = testing::single_edge_instance();
  const FromOptRun r1 = dynamics_from_opt(one);
  EXPECT_EQ(r1.opt.paths[0], named_path(one.graph(), {"s", "t"}));
  EXPECT_EQ(r1.nash, r1.opt);

  const GameInstance y = y_instance();
  const FromOptRun ry = dynamics_from_opt(y);
  EXPECT_EQ(ry.opt, y_star_profile(y));
  EXPECT_EQ(ry.nash, y_star_profile(y));
  EXPECT_TRUE(ry.trace.terminated);
  EXPECT_EQ(ry.trace.iterations, 0u);
  EXPECT_EQ(ry.opt_tree.cost(), Rational(4));
}

TEST(DynamicsFromOptTest, RejectsMultiSink) {
  std::mt19937_64 rng(1);
  Graph g({"a", "b", "c"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  const GameInstance inst(g, {{0, 1}, {1, 2}});
  EXPECT_THROW(dynamics_from_opt(inst), InputError);
}

TEST(TreeifyTest, Examples) {
  const GameInstance y = y_instance();
  const TreeifyResult star = treeify(y, y_star_profile(y));
  EXPECT_FALSE(star.changed);
  EXPECT_TRUE(star.is_tree);

  Graph g({"s", "a", "t"});
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  const GameInstance shared(g, {{0, 2}, {0, 2}});
  const Path p = named_path(shared.graph(), {"s", "a", "t"});
  EXPECT_FALSE(treeify(shared, {{p, p}}).changed);

  const GameInstance sq = square_instance();
  const StrategyProfile split{{named_path(sq.graph(), {"s", "a", "t"}), named_path(sq.graph(), {"s", "b", "t"})}};
  const TreeifyResult r = treeify(sq, split);
  EXPECT_TRUE(r.changed);
  EXPECT_TRUE(r.is_tree);
  EXPECT_EQ(r.profile.paths[0], r.profile.paths[1]);
  EXPECT_EQ(r.profile.paths[0], named_path(sq.graph(), {"s", "a", "t"}));
  EXPECT_TRUE(testing::brute_force_is_nash(sq, r.profile));
}

// Trace invariants: one mover per step, strictly falling potential,
// no repeated profile, and a Nash endpoint confirmed exhaustively.
TEST(DynamicsProperty, TraceIsStrictlyImprovingAndEndsAtNash) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const GameInstance inst = trial % 2 == 0 ? testing::random_single_sink(rng, 7, 2 + trial % 3, 6)
                                             : testing::random_multi_sink(rng, 7, 2 + trial % 3, 6);
    const StrategyProfile start = testing::random_profile(rng, inst);
    const Policy policy = trial % 3 == 0 ? Policy::kFirstImprovement : Policy::kBestImprovement;
    const DynamicsRun run = run_dynamics(inst, start, policy);
    ASSERT_TRUE(run.trace.terminated);
    EXPECT_EQ(run.trace.iterations, run.trace.steps.size());
    EXPECT_TRUE(testing::brute_force_is_nash(inst, run.profile));

    StrategyProfile cur = start;
    Rational phi = potential(inst, cur);
    std::set<StrategyProfile> seen{cur};
    for (const DynamicsStep& step : run.trace.steps) {
      EXPECT_EQ(cur.paths[step.player], step.old_path);
      const Rational before = player_cost(inst, cur, step.player);
      cur.paths[step.player] = step.new_path;
      EXPECT_LT(player_cost(inst, cur, step.player), before);
      EXPECT_LT(step.potential_after, phi);
      EXPECT_EQ(step.potential_after, potential(inst, cur));
      phi = step.potential_after;
      EXPECT_TRUE(seen.insert(cur).second);
    }
    EXPECT_EQ(cur, run.profile);
  }
}

TEST(DynamicsProperty, TreeifyKeepsItsPromises) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const GameInstance inst = testing::random_single_sink(rng, 7, 2 + trial % 4, 6, 4);
    const StrategyProfile start = testing::random_profile(rng, inst);
    const DynamicsRun run = run_dynamics(inst, start, Policy::kBestImprovement);
    const TreeifyResult r = treeify(inst, run.profile);
    EXPECT_TRUE(is_nash(inst, r.profile).is_nash);
    if (!r.changed) {
      EXPECT_EQ(r.profile, run.profile);
      continue;
    }
    EXPECT_TRUE(r.is_tree);
    EXPECT_LE(potential(inst, r.profile), potential(inst, run.profile));
    for (std::size_t i = 0; i < inst.player_count(); ++i) {
      EXPECT_LE(player_cost(inst, r.profile, i), player_cost(inst, run.profile, i));
    }
  }
}

}  // namespace
}  // namespace shapley
