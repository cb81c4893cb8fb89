#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shapley/game.hpp"
#include "shapley/tree.hpp"

namespace shapley {

enum class Policy {
  kBestImprovement,   // mover = player with the largest strict gain, lowest index on ties
  kFirstImprovement,  // mover = lowest-index player with any strict gain
};

inline constexpr std::uint64_t kDefaultDynamicsCap = 1'000'000;

struct DynamicsStep {
  std::size_t player = 0;
  Path old_path;
  Path new_path;
  Rational potential_after;
};

struct DynamicsTrace {
  std::vector<DynamicsStep> steps;
  bool terminated = false;  // final profile passed is_nash
  std::uint64_t iterations = 0;
};

struct DynamicsRun {
  StrategyProfile profile;
  DynamicsTrace trace;
};

/// Moves one improving player to its best response, or returns nullopt if
/// the profile is a Nash equilibrium.
std::optional<StrategyProfile> better_response_step(const GameInstance& inst,
                                                    const StrategyProfile& prof, Policy policy);

/// Repeats better_response_step until equilibrium or `cap` moves.
/// Hitting the cap is not an error: the trace reports terminated = false.
DynamicsRun run_dynamics(const GameInstance& inst, StrategyProfile start, Policy policy,
                         std::uint64_t cap = kDefaultDynamicsCap);

struct FromOptRun {
  Tree opt_tree;  // borrows inst.graph()
  StrategyProfile opt;
  StrategyProfile nash;
  DynamicsTrace trace;
};

/// Solves the single-sink optimum exactly, then runs dynamics from it.
FromOptRun dynamics_from_opt(const GameInstance& inst, std::uint64_t cap = kDefaultDynamicsCap,
                             Policy policy = Policy::kBestImprovement);

struct TreeifyResult {
  StrategyProfile profile;
  bool changed = false;
  bool is_tree = false;  // union of the returned paths is a tree
};

/// Tries to turn a single-sink equilibrium whose path union has cycles into
/// one whose union is a tree, by rerouting players inside the union. A
/// reroute is accepted only if no player's cost share rises, the result is
/// still an equilibrium and the potential does not increase.
TreeifyResult treeify(const GameInstance& inst, const StrategyProfile& prof);

}  // namespace shapley
