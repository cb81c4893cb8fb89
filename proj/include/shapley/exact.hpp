#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shapley/game.hpp"
#include "shapley/tree.hpp"

namespace shapley {

inline constexpr std::size_t kMaxSteinerTerminals = 12;
inline constexpr std::size_t kMaxSteinerVertices = 50;

struct SteinerTree {
  Tree tree;  // borrows the graph passed to steiner_tree_exact
  Rational cost;
};

/// Minimum-cost tree spanning `terminals` (Dreyfus-Wagner over terminal
/// subsets). Duplicate terminals are ignored. The tree is rooted at
/// terminals[0] and has no non-terminal leaves.
/// Throws CapacityError beyond kMaxSteinerTerminals / kMaxSteinerVertices.
SteinerTree steiner_tree_exact(const Graph& g, std::span<const VertexId> terminals);

/// Routes every player along `tree` to the common sink after pruning leaves
/// that are neither sources nor the sink. Players with s_i = t get {t}.
StrategyProfile opt_profile_from_tree(const GameInstance& inst, const Tree& tree);

/// All simple s-t paths in lexicographic vertex order (parallel edges by
/// edge id). Throws CapacityError if there are more than `cap`.
std::vector<Path> enumerate_simple_paths(const Graph& g, VertexId s, VertexId t, std::size_t cap);

struct EnumerationCaps {
  std::size_t max_profiles = 1'000'000;
  std::size_t max_paths_per_player = 10'000;
};

/// Strategy spaces for every player under `caps`; checks the profile cap.
std::vector<std::vector<Path>> strategy_spaces(const GameInstance& inst, const EnumerationCaps& caps);

/// Nash check by trying every simple path of every player.
NashCheck is_nash_exhaustive(const GameInstance& inst, const StrategyProfile& prof,
                             const EnumerationCaps& caps = {});

/// Every pure Nash equilibrium, in odometer order over the strategy spaces
/// (player 0 slowest).
std::vector<StrategyProfile> enumerate_nash(const GameInstance& inst, const EnumerationCaps& caps = {});

struct PriceOfStability {
  Rational pos;
  StrategyProfile best_nash;
  Rational best_nash_cost;
  Rational opt_cost;
  StrategyProfile opt;
  std::size_t nash_count = 0;
  std::size_t profile_count = 0;
  /// A profile of minimum potential (first in enumeration order) and
  /// whether it is an equilibrium.
  StrategyProfile min_potential;
  bool min_potential_is_nash = false;
};

/// Exact PoS by full profile enumeration. OPT is the cheapest enumerated
/// profile, which is the optimal Steiner forest. When OPT costs 0, PoS is
/// defined as 1. Throws InternalError if no equilibrium exists or PoS
/// exceeds H(n).
PriceOfStability price_of_stability_exact(const GameInstance& inst, const EnumerationCaps& caps = {});

}  // namespace shapley
