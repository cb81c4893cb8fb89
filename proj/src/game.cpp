#include "shapley/game.hpp"

#include <algorithm>
#include <string>

#include "shapley/error.hpp"

namespace shapley {
namespace {

void require_player(const GameInstance& inst, std::size_t i) {
  if (i >= inst.player_count()) {
    throw InputError("player index " + std::to_string(i) + " out of range (n = " +
                     std::to_string(inst.player_count()) + ")");
  }
}

void require_profile_shape(const GameInstance& inst, const StrategyProfile& prof) {
  if (prof.paths.size() != inst.player_count()) {
    throw InputError("profile has " + std::to_string(prof.paths.size()) + " paths for " +
                     std::to_string(inst.player_count()) + " players");
  }
}

// Loads of all players except i, indexed by edge id.
std::vector<std::uint32_t> loads_without(const GameInstance& inst, const StrategyProfile& prof,
                                         std::size_t i) {
  std::vector<std::uint32_t> loads(inst.graph().edge_count(), 0);
  for (std::size_t k = 0; k < prof.paths.size(); ++k) {
    if (k == i) continue;
    for (EdgeId e : prof.paths[k].edges) ++loads[e];
  }
  return loads;
}

}  // namespace

GameInstance::GameInstance(Graph graph, std::vector<Player> players,
                           std::optional<VertexId> declared_sink)
    : graph_(std::move(graph)), players_(std::move(players)), declared_sink_(declared_sink) {
  if (players_.empty()) throw InputError("a game needs at least one player");
  for (const Player& p : players_) {
    if (!graph_.contains(p.source) || !graph_.contains(p.sink)) {
      throw InputError("player endpoint is not a graph vertex");
    }
  }
  if (declared_sink_) {
    if (!graph_.contains(*declared_sink_)) throw InputError("declared sink is not a graph vertex");
    for (const Player& p : players_) {
      if (p.sink != *declared_sink_) {
        throw InputError("player sink '" + graph_.name(p.sink) + "' differs from the declared sink '" +
                         graph_.name(*declared_sink_) + "'");
      }
    }
  }
}

const Player& GameInstance::player(std::size_t i) const {
  require_player(*this, i);
  return players_[i];
}

std::optional<VertexId> GameInstance::single_sink() const {
  const VertexId t = players_.front().sink;
  for (const Player& p : players_) {
    if (p.sink != t) return std::nullopt;
  }
  return t;
}

GameInstance GameInstance::with_dummy_player() const {
  const auto t = single_sink();
  if (!t) throw InputError("dummy player requires a single-sink instance");
  std::vector<Player> players;
  players.reserve(players_.size() + 1);
  players.push_back({*t, *t});
  players.insert(players.end(), players_.begin(), players_.end());
  return GameInstance(graph_, std::move(players), declared_sink_);
}

void validate_profile(const GameInstance& inst, const StrategyProfile& prof) {
  require_profile_shape(inst, prof);
  for (std::size_t i = 0; i < prof.paths.size(); ++i) {
    const Path& p = prof.paths[i];
    if (!is_simple_path(inst.graph(), p)) {
      throw InputError("path of player " + std::to_string(i) + " is not a simple path");
    }
    if (p.source() != inst.player(i).source || p.target() != inst.player(i).sink) {
      throw InputError("path of player " + std::to_string(i) + " does not join its source and sink");
    }
  }
}

EdgeLoadMap edge_loads(const GameInstance& inst, const StrategyProfile& prof) {
  require_profile_shape(inst, prof);
  EdgeLoadMap loads;
  for (const Path& p : prof.paths) {
    for (EdgeId e : p.edges) ++loads[e];
  }
  return loads;
}

std::vector<EdgeId> used_edges(const StrategyProfile& prof) {
  std::vector<EdgeId> out;
  for (const Path& p : prof.paths) out.insert(out.end(), p.edges.begin(), p.edges.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational player_cost(const GameInstance& inst, const StrategyProfile& prof, std::size_t i) {
  require_player(inst, i);
  const EdgeLoadMap loads = edge_loads(inst, prof);
  Rational cost;
  for (EdgeId e : prof.paths[i].edges) {
    cost += inst.graph().edge(e).cost / Rational(loads.at(e));
  }
  return cost;
}

Rational social_cost(const GameInstance& inst, const StrategyProfile& prof) {
  require_profile_shape(inst, prof);
  return inst.graph().cost_of(used_edges(prof));
}

Rational harmonic(std::uint64_t n) {
  Rational h;
  for (std::uint64_t k = 1; k <= n; ++k) h += Rational(1, static_cast<std::int64_t>(k));
  return h;
}

Rational potential(const GameInstance& inst, const StrategyProfile& prof) {
  Rational phi;
  std::vector<Rational> h{Rational(0)};
  for (const auto& [e, load] : edge_loads(inst, prof)) {
    while (h.size() <= load) h.push_back(h.back() + Rational(1, static_cast<std::int64_t>(h.size())));
    phi += inst.graph().edge(e).cost * h[load];
  }
  return phi;
}

Rational deviation_cost(const GameInstance& inst, const StrategyProfile& prof, std::size_t i,
                        const Path& alt) {
  require_player(inst, i);
  require_profile_shape(inst, prof);
  if (!is_simple_path(inst.graph(), alt) || alt.source() != inst.player(i).source ||
      alt.target() != inst.player(i).sink) {
    throw InputError("deviation of player " + std::to_string(i) + " is not a simple source-sink path");
  }
  const auto others = loads_without(inst, prof, i);
  Rational cost;
  for (EdgeId e : alt.edges) cost += inst.graph().edge(e).cost / Rational(others.at(e) + 1);
  return cost;
}

BestResponse best_response(const GameInstance& inst, const StrategyProfile& prof, std::size_t i) {
  require_player(inst, i);
  require_profile_shape(inst, prof);
  const Player& pl = inst.player(i);
  if (pl.source == pl.sink) return BestResponse{Path::trivial(pl.source), Rational(0)};
  const auto others = loads_without(inst, prof, i);
  EdgeWeights weights;
  weights.reserve(inst.graph().edge_count());
  for (EdgeId e = 0; e < inst.graph().edge_count(); ++e) {
    const Rational& c = inst.graph().edge(e).cost;
    weights.emplace_back(PathWeight{c / Rational(others[e] + 1), others[e] > 0 ? -c : Rational(0)});
  }
  PathWeight total;
  Path path = min_weight_path(inst.graph(), pl.source, pl.sink, weights, &total);
  return BestResponse{std::move(path), std::move(total.primary)};
}

NashCheck is_nash(const GameInstance& inst, const StrategyProfile& prof) {
  validate_profile(inst, prof);
  NashCheck result;
  for (std::size_t i = 0; i < inst.player_count(); ++i) {
    BestResponse br = best_response(inst, prof, i);
    const Rational gain = player_cost(inst, prof, i) - br.cost;
    if (gain.sign() <= 0) continue;
    if (!result.witness || gain > result.witness->improvement) {
      result.is_nash = false;
      result.witness = Improvement{i, std::move(br.path), gain};
    }
  }
  return result;
}

}  // namespace shapley
