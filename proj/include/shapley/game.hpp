#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "shapley/graph.hpp"

namespace shapley {

struct Player {
  VertexId source = 0;
  VertexId sink = 0;
  bool operator==(const Player&) const = default;
};

/// A Shapley network design game: a connected graph and n >= 1 players.
class GameInstance {
 public:
  /// Throws InputError on unknown vertices, an empty player list, or a
  /// declared sink that some player does not use.
  GameInstance(Graph graph, std::vector<Player> players,
               std::optional<VertexId> declared_sink = std::nullopt);

  const Graph& graph() const { return graph_; }
  std::span<const Player> players() const { return players_; }
  const Player& player(std::size_t i) const;
  std::size_t player_count() const { return players_.size(); }

  /// The sink as written in the instance file, if any.
  std::optional<VertexId> declared_sink() const { return declared_sink_; }
  /// The common sink when all players share one, declared or not.
  std::optional<VertexId> single_sink() const;

  /// Copy with a player (t, t) inserted at index 0; requires a single sink.
  GameInstance with_dummy_player() const;

  bool operator==(const GameInstance&) const = default;

 private:
  Graph graph_;
  std::vector<Player> players_;
  std::optional<VertexId> declared_sink_;
};

/// One simple path per player, paths[i] running from s_i to t_i.
struct StrategyProfile {
  std::vector<Path> paths;
  auto operator<=>(const StrategyProfile&) const = default;
};

/// Throws InputError unless every path is simple and joins its player's pair.
void validate_profile(const GameInstance& inst, const StrategyProfile& prof);

/// Edge -> number of profile paths using it; unused edges are absent.
using EdgeLoadMap = std::map<EdgeId, std::uint32_t>;

EdgeLoadMap edge_loads(const GameInstance& inst, const StrategyProfile& prof);

/// Edges used by at least one player, ascending.
std::vector<EdgeId> used_edges(const StrategyProfile& prof);

/// Fair share c_i = sum over the player's edges of c_e / f_e.
Rational player_cost(const GameInstance& inst, const StrategyProfile& prof, std::size_t i);

/// Total cost of edges used by at least one player.
Rational social_cost(const GameInstance& inst, const StrategyProfile& prof);

/// H(n) = 1 + 1/2 + ... + 1/n, with H(0) = 0.
Rational harmonic(std::uint64_t n);

/// Rosenthal potential: sum over edges of c_e * H(f_e).
Rational potential(const GameInstance& inst, const StrategyProfile& prof);

/// Player i's cost after unilaterally switching to `alt`:
/// sum over e in alt of c_e / (f_e^{-i} + 1).
Rational deviation_cost(const GameInstance& inst, const StrategyProfile& prof, std::size_t i,
                        const Path& alt);

struct BestResponse {
  Path path;
  Rational cost;
};

/// A cheapest deviation for player i. Ties go to the path sharing the most
/// cost with the other players' current paths, then to the lexicographically
/// smallest vertex sequence.
BestResponse best_response(const GameInstance& inst, const StrategyProfile& prof, std::size_t i);

struct Improvement {
  std::size_t player = 0;
  Path path;
  Rational improvement;
};

struct NashCheck {
  bool is_nash = true;
  /// Present iff !is_nash: the largest strict improvement, lowest player first.
  std::optional<Improvement> witness;
};

NashCheck is_nash(const GameInstance& inst, const StrategyProfile& prof);

}  // namespace shapley
