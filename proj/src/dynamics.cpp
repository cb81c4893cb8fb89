#include "shapley/dynamics.hpp"

#include <algorithm>

#include "shapley/error.hpp"
#include "shapley/exact.hpp"

namespace shapley {
namespace {

struct Move {
  std::size_t player;
  Path path;
};

std::optional<Move> select_move(const GameInstance& inst, const StrategyProfile& prof, Policy policy) {
  std::optional<Move> move;
  Rational best_gain;
  for (std::size_t i = 0; i < inst.player_count(); ++i) {
    const Player& pl = inst.player(i);
    if (pl.source == pl.sink) continue;  // dummy-style players never move
    BestResponse br = best_response(inst, prof, i);
    const Rational gain = player_cost(inst, prof, i) - br.cost;
    if (gain.sign() <= 0) continue;
    if (policy == Policy::kFirstImprovement) return Move{i, std::move(br.path)};
    if (!move || gain > best_gain) {
      best_gain = gain;
      move = Move{i, std::move(br.path)};
    }
  }
  return move;
}

bool union_is_tree(const GameInstance& inst, const StrategyProfile& prof) {
  return is_tree(inst.graph(), used_edges(prof));
}

}  // namespace

std::optional<StrategyProfile> better_response_step(const GameInstance& inst,
                                                    const StrategyProfile& prof, Policy policy) {
  validate_profile(inst, prof);
  auto move = select_move(inst, prof, policy);
  if (!move) return std::nullopt;
  StrategyProfile next = prof;
  next.paths[move->player] = std::move(move->path);
  return next;
}

DynamicsRun run_dynamics(const GameInstance& inst, StrategyProfile start, Policy policy,
                         std::uint64_t cap) {
  if (cap == 0) throw InputError("dynamics cap must be positive");
  validate_profile(inst, start);
  DynamicsRun run{std::move(start), {}};
  while (run.trace.iterations < cap) {
    auto move = select_move(inst, run.profile, policy);
    if (!move) break;
    DynamicsStep step;
    step.player = move->player;
    step.old_path = std::move(run.profile.paths[move->player]);
    run.profile.paths[move->player] = move->path;
    step.new_path = std::move(move->path);
    step.potential_after = potential(inst, run.profile);
    run.trace.steps.push_back(std::move(step));
    ++run.trace.iterations;
  }
  run.trace.terminated = is_nash(inst, run.profile).is_nash;
  return run;
}

FromOptRun dynamics_from_opt(const GameInstance& inst, std::uint64_t cap, Policy policy) {
  const auto t = inst.single_sink();
  if (!t) throw InputError("dynamics from OPT requires a single-sink instance");
  std::vector<VertexId> terminals{*t};
  for (const Player& p : inst.players()) terminals.push_back(p.source);
  SteinerTree steiner = steiner_tree_exact(inst.graph(), terminals);
  StrategyProfile opt = opt_profile_from_tree(inst, steiner.tree);
  DynamicsRun run = run_dynamics(inst, opt, policy, cap);
  return FromOptRun{std::move(steiner.tree), std::move(opt), std::move(run.profile), std::move(run.trace)};
}

TreeifyResult treeify(const GameInstance& inst, const StrategyProfile& prof) {
  const auto t = inst.single_sink();
  if (!t) throw InputError("treeify requires a single-sink instance");
  validate_profile(inst, prof);
  if (union_is_tree(inst, prof)) return TreeifyResult{prof, false, true};

  // Shortest-path tree of the union toward t under full edge costs.
  const Graph& g = inst.graph();
  EdgeWeights weights(g.edge_count());
  for (EdgeId e : used_edges(prof)) weights[e] = PathWeight{g.edge(e).cost, 0};
  StrategyProfile candidate;
  for (const Player& p : inst.players()) {
    candidate.paths.push_back(p.source == p.sink ? Path::trivial(p.source)
                                                 : min_weight_path(g, p.source, p.sink, weights));
  }

  bool acceptable = union_is_tree(inst, candidate) && potential(inst, candidate) <= potential(inst, prof);
  for (std::size_t i = 0; acceptable && i < inst.player_count(); ++i) {
    acceptable = player_cost(inst, candidate, i) <= player_cost(inst, prof, i);
  }
  acceptable = acceptable && is_nash(inst, candidate).is_nash;
  if (!acceptable) return TreeifyResult{prof, false, false};
  return TreeifyResult{std::move(candidate), true, true};
}

}  // namespace shapley
