#include "shapley/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "shapley/error.hpp"

namespace shapley {
namespace {

// Removes, repeatedly, leaves of the edge set that are not in `keep`.
std::vector<EdgeId> prune_leaves(const Graph& g, std::vector<EdgeId> edges, const std::vector<char>& keep) {
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> degree(g.vertex_count(), 0);
    for (EdgeId e : edges) {
      ++degree[g.edge(e).u];
      ++degree[g.edge(e).v];
    }
    std::vector<EdgeId> kept;
    for (EdgeId e : edges) {
      const Edge& edge = g.edge(e);
      const bool dangling = (degree[edge.u] == 1 && !keep[edge.u]) || (degree[edge.v] == 1 && !keep[edge.v]);
      if (dangling) {
        changed = true;
      } else {
        kept.push_back(e);
      }
    }
    edges = std::move(kept);
  }
  return edges;
}

class DreyfusWagner {
 public:
  DreyfusWagner(const Graph& g, std::vector<VertexId> terminals) : g_(g), terminals_(std::move(terminals)) {
    const std::size_t n = g.vertex_count();
    const auto from_root = distances_to(g, terminals_[0], cost_edge_weights());
    for (VertexId v = 0; v < n; ++v) {
      if (from_root[v]) reach_.push_back(v);
    }
    for (VertexId term : terminals_) {
      if (!from_root[term]) {
        throw ConnectivityError("terminal '" + g.name(term) + "' is not connected to '" + g.name(terminals_[0]) + "'");
      }
    }
    // Distances among reachable vertices, indexed by position in reach_.
    dist_.assign(reach_.size(), std::vector<Rational>(reach_.size()));
    pos_.assign(n, 0);
    for (std::size_t a = 0; a < reach_.size(); ++a) pos_[reach_[a]] = a;
    is_terminal_.assign(reach_.size(), 0);
    for (VertexId term : terminals_) is_terminal_[pos_[term]] = 1;
    for (std::size_t a = 0; a < reach_.size(); ++a) {
      const auto d = distances_to(g, reach_[a], cost_edge_weights());
      for (std::size_t b = 0; b < reach_.size(); ++b) dist_[a][b] = d[reach_[b]]->primary;
    }
  }

  // Returns the optimum and the edges of a tree realizing it.
  std::pair<Rational, std::vector<EdgeId>> solve() {
    const std::size_t m = terminals_.size() - 1;  // terminals other than the root
    const std::size_t full = (std::size_t{1} << m) - 1;
    const std::size_t r = reach_.size();
    value_.assign(full + 1, std::vector<Rational>(r));
    split_value_.assign(full + 1, std::vector<Rational>(r));
    split_.assign(full + 1, std::vector<std::size_t>(r, 0));
    via_.assign(full + 1, std::vector<std::size_t>(r, 0));

    for (std::size_t set = 1; set <= full; ++set) {
      if (std::has_single_bit(set)) {
        const std::size_t term = pos_[terminals_[1 + std::countr_zero(set)]];
        for (std::size_t v = 0; v < r; ++v) {
          value_[set][v] = dist_[term][v];
          via_[set][v] = v;
        }
        continue;
      }
      const std::size_t low = set & (~set + 1);
      for (std::size_t u = 0; u < r; ++u) {
        bool have = false;
        // Subsets containing the lowest bit, so each split is seen once.
        for (std::size_t sub = (set - 1) & set; sub > 0; sub = (sub - 1) & set) {
          if (!(sub & low)) continue;
          Rational cand = value_[sub][u] + value_[set ^ sub][u];
          if (!have || cand < split_value_[set][u]) {
            split_value_[set][u] = std::move(cand);
            split_[set][u] = sub;
            have = true;
          }
        }
      }
      // Equal-cost ties prefer branching at a non-terminal vertex, then at
      // some u != v, then the lowest id; equal-cost optima thus share trunks
      // through Steiner points rather than through other players' sources.
      for (std::size_t v = 0; v < r; ++v) {
        std::size_t best = v;
        Rational best_value = split_value_[set][v];
        auto rank = [&](std::size_t u) { return std::pair{is_terminal_[u] ? 1 : 0, u == v ? 1 : 0}; };
        for (std::size_t u = 0; u < r; ++u) {
          if (u == v) continue;
          Rational cand = split_value_[set][u] + dist_[u][v];
          if (cand < best_value || (cand == best_value && rank(u) < rank(best))) {
            best_value = std::move(cand);
            best = u;
          }
        }
        value_[set][v] = split_value_[set][best] + dist_[best][v];
        via_[set][v] = best;
      }
    }

    std::vector<EdgeId> edges;
    const std::size_t root = pos_[terminals_[0]];
    if (m > 0) collect(full, root, edges);
    return {m > 0 ? value_[full][root] : Rational(0), std::move(edges)};
  }

 private:
  static EdgeWeights weights_for(const Graph& g) {
    EdgeWeights w;
    for (const Edge& e : g.edges()) w.emplace_back(PathWeight{e.cost, 0});
    return w;
  }
  EdgeWeights cost_edge_weights() const { return weights_for(g_); }

  void add_path(std::size_t from, std::size_t to, std::vector<EdgeId>& out) const {
    if (from == to) return;
    const Path p = shortest_path(g_, reach_[from], reach_[to]).path;
    out.insert(out.end(), p.edges.begin(), p.edges.end());
  }

  void collect(std::size_t set, std::size_t v, std::vector<EdgeId>& out) const {
    if (std::has_single_bit(set)) {
      add_path(pos_[terminals_[1 + std::countr_zero(set)]], v, out);
      return;
    }
    const std::size_t u = via_[set][v];
    add_path(u, v, out);
    const std::size_t sub = split_[set][u];
    collect(sub, u, out);
    collect(set ^ sub, u, out);
  }

  const Graph& g_;
  std::vector<VertexId> terminals_;
  std::vector<VertexId> reach_;
  std::vector<std::size_t> pos_;
  std::vector<char> is_terminal_;
  std::vector<std::vector<Rational>> dist_;
  std::vector<std::vector<Rational>> value_;        // best tree over set + v
  std::vector<std::vector<Rational>> split_value_;  // best tree over set with v as a branch point
  std::vector<std::vector<std::size_t>> split_;
  std::vector<std::vector<std::size_t>> via_;
};

void enumerate_paths_from(const Graph& g, VertexId v, VertexId t, std::size_t cap, std::vector<char>& on_path,
                          Path& current, std::vector<Path>& out) {
  if (v == t) {
    if (out.size() == cap) {
      throw CapacityError("more than " + std::to_string(cap) + " simple paths between '" +
                          g.name(current.source()) + "' and '" + g.name(t) + "'");
    }
    out.push_back(current);
    return;
  }
  for (const Incidence& inc : g.incident(v)) {
    if (on_path[inc.neighbor]) continue;
    on_path[inc.neighbor] = 1;
    current.vertices.push_back(inc.neighbor);
    current.edges.push_back(inc.edge);
    enumerate_paths_from(g, inc.neighbor, t, cap, on_path, current, out);
    current.vertices.pop_back();
    current.edges.pop_back();
    on_path[inc.neighbor] = 0;
  }
}

// Exhaustive scan over the product of strategy spaces.
//
// Every quantity the scan compares (cost shares, social cost, potential) is
// a sum of table entries share[e][f] = c_e / f, so the scan is generic over
// the number type: scaled int64 when the common denominator fits, Rational
// otherwise. Both are exact.
template <typename Num>
class ProfileScan {
 public:
  ProfileScan(const GameInstance& inst, const std::vector<std::vector<Path>>& spaces,
              std::vector<std::vector<Num>> share)
      : inst_(inst), spaces_(spaces), share_(std::move(share)) {}

  struct Visit {
    const std::vector<std::size_t>& choice;
    bool nash;
    const Num& social;
    const Num& potential;
  };

  template <typename Fn>
  void run(Fn&& visit) {
    const std::size_t n = spaces_.size();
    const std::size_t edges = inst_.graph().edge_count();
    std::vector<std::size_t> choice(n, 0);
    std::vector<std::uint32_t> load(edges, 0);
    for (std::size_t i = 0; i < n; ++i) add(choice, i, load, +1);
    for (;;) {
      Num social{};
      Num phi{};
      for (std::size_t e = 0; e < edges; ++e) {
        if (load[e] == 0) continue;
        social += share_[e][1];
        phi += potential_term(e, load[e]);
      }
      const bool nash = is_equilibrium(choice, load);
      visit(Visit{choice, nash, social, phi});
      // Odometer step, last player fastest.
      std::size_t i = n;
      while (i > 0) {
        --i;
        add(choice, i, load, -1);
        if (++choice[i] < spaces_[i].size()) {
          add(choice, i, load, +1);
          break;
        }
        choice[i] = 0;
        add(choice, i, load, +1);
        if (i == 0) return;
      }
    }
  }

  // Whether player i can strictly improve; fills the best deviation index.
  bool improvable(const std::vector<std::size_t>& choice, const std::vector<std::uint32_t>& load, std::size_t i,
                  std::size_t* best_alt, Num* gain) const {
    const Path& mine = spaces_[i][choice[i]];
    Num current{};
    for (EdgeId e : mine.edges) current += share_[e][load[e]];
    std::vector<char> on_mine(inst_.graph().edge_count(), 0);
    for (EdgeId e : mine.edges) on_mine[e] = 1;
    bool found = false;
    Num best_gain{};
    for (std::size_t a = 0; a < spaces_[i].size(); ++a) {
      Num dev{};
      for (EdgeId e : spaces_[i][a].edges) dev += share_[e][load[e] - on_mine[e] + 1];
      if (dev < current) {
        Num g = current - dev;
        if (!found || best_gain < g) {
          best_gain = g;
          if (best_alt) *best_alt = a;
          found = true;
        }
        if (!best_alt) return true;
      }
    }
    if (found && gain) *gain = best_gain;
    return found;
  }

 private:
  void add(const std::vector<std::size_t>& choice, std::size_t i, std::vector<std::uint32_t>& load, int delta) const {
    for (EdgeId e : spaces_[i][choice[i]].edges) load[e] = static_cast<std::uint32_t>(static_cast<int>(load[e]) + delta);
  }

  Num potential_term(std::size_t e, std::uint32_t f) const {
    Num sum{};
    for (std::uint32_t k = 1; k <= f; ++k) sum += share_[e][k];
    return sum;
  }

  bool is_equilibrium(const std::vector<std::size_t>& choice, const std::vector<std::uint32_t>& load) const {
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (improvable(choice, load, i, nullptr, nullptr)) return false;
    }
    return true;
  }

  const GameInstance& inst_;
  const std::vector<std::vector<Path>>& spaces_;
  std::vector<std::vector<Num>> share_;
};

std::vector<std::vector<Rational>> rational_shares(const GameInstance& inst) {
  const std::size_t n = inst.player_count();
  std::vector<std::vector<Rational>> share;
  for (const Edge& e : inst.graph().edges()) {
    std::vector<Rational> row(n + 1);
    for (std::size_t f = 1; f <= n; ++f) row[f] = e.cost / Rational(static_cast<std::int64_t>(f));
    share.push_back(std::move(row));
  }
  return share;
}

// Integer shares c_e * scale / f, or nullopt if the scan could overflow int64.
std::optional<std::vector<std::vector<std::int64_t>>> integer_shares(const GameInstance& inst) {
  const std::size_t n = inst.player_count();
  // scale = lcm(cost denominators) * lcm(1..n) makes every c_e / f integral.
  mpz_class dens = 1;
  mpz_class loads = 1;
  for (std::size_t f = 2; f <= n; ++f) mpz_lcm_ui(loads.get_mpz_t(), loads.get_mpz_t(), f);
  for (const Edge& e : inst.graph().edges()) {
    const mpz_class den(e.cost.denominator_str());
    mpz_lcm(dens.get_mpz_t(), dens.get_mpz_t(), den.get_mpz_t());
  }
  const mpz_class scale = dens * loads;
  mpz_class total = 0;
  std::vector<std::vector<std::int64_t>> share;
  for (const Edge& e : inst.graph().edges()) {
    const mpz_class num(e.cost.numerator_str());
    const mpz_class den(e.cost.denominator_str());
    const mpz_class scaled = num * (scale / den);
    total += scaled;
    std::vector<std::int64_t> row(n + 1, 0);
    for (std::size_t f = 1; f <= n; ++f) {
      const mpz_class v = scaled / static_cast<unsigned long>(f);
      if (!v.fits_slong_p()) return std::nullopt;
      row[f] = v.get_si();
    }
    share.push_back(std::move(row));
  }
  // Potential and every cost share are bounded by total * H(n) <= total * n.
  if (total * static_cast<unsigned long>(n + 1) >= mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
    return std::nullopt;
  }
  return share;
}

StrategyProfile profile_of(const std::vector<std::vector<Path>>& spaces, const std::vector<std::size_t>& choice) {
  StrategyProfile p;
  for (std::size_t i = 0; i < spaces.size(); ++i) p.paths.push_back(spaces[i][choice[i]]);
  return p;
}

template <typename Num>
std::vector<StrategyProfile> scan_nash(const GameInstance& inst, const std::vector<std::vector<Path>>& spaces,
                                       std::vector<std::vector<Num>> share) {
  std::vector<StrategyProfile> out;
  ProfileScan<Num> scan(inst, spaces, std::move(share));
  scan.run([&](const auto& v) {
    if (v.nash) out.push_back(profile_of(spaces, v.choice));
  });
  return out;
}

template <typename Num>
PriceOfStability scan_pos(const GameInstance& inst, const std::vector<std::vector<Path>>& spaces,
                          std::vector<std::vector<Num>> share) {
  PriceOfStability r;
  std::optional<Num> best_nash, opt, min_phi;
  std::vector<std::size_t> best_nash_choice, opt_choice, min_phi_choice;
  ProfileScan<Num> scan(inst, spaces, std::move(share));
  scan.run([&](const auto& v) {
    ++r.profile_count;
    if (v.nash) {
      ++r.nash_count;
      if (!best_nash || v.social < *best_nash) {
        best_nash = v.social;
        best_nash_choice = v.choice;
      }
    }
    if (!opt || v.social < *opt) {
      opt = v.social;
      opt_choice = v.choice;
    }
    if (!min_phi || v.potential < *min_phi) {
      min_phi = v.potential;
      min_phi_choice = v.choice;
      r.min_potential_is_nash = v.nash;
    }
  });
  if (!best_nash) throw InternalError("no pure Nash equilibrium found; the game always has one");
  r.best_nash = profile_of(spaces, best_nash_choice);
  r.opt = profile_of(spaces, opt_choice);
  r.min_potential = profile_of(spaces, min_phi_choice);
  return r;
}

template <typename Num>
NashCheck exhaustive_check(const GameInstance& inst, const std::vector<std::vector<Path>>& spaces,
                           const StrategyProfile& prof, std::vector<std::vector<Num>> share) {
  // Place the profile's own paths as choice 0 of a one-profile scan.
  std::vector<std::vector<Path>> local = spaces;
  std::vector<std::size_t> choice(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    auto it = std::find(local[i].begin(), local[i].end(), prof.paths[i]);
    choice[i] = static_cast<std::size_t>(it - local[i].begin());
  }
  std::vector<std::uint32_t> load(inst.graph().edge_count(), 0);
  for (const Path& p : prof.paths) {
    for (EdgeId e : p.edges) ++load[e];
  }
  ProfileScan<Num> scan(inst, local, std::move(share));
  NashCheck result;
  Num best{};
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    std::size_t alt = 0;
    Num gain{};
    if (!scan.improvable(choice, load, i, &alt, &gain)) continue;
    if (!result.witness || best < gain) {
      best = gain;
      result.is_nash = false;
      result.witness = Improvement{i, local[i][alt], Rational(0)};
    }
  }
  if (result.witness) {
    const std::size_t i = result.witness->player;
    result.witness->improvement = player_cost(inst, prof, i) - deviation_cost(inst, prof, i, result.witness->path);
  }
  return result;
}

}  // namespace

SteinerTree steiner_tree_exact(const Graph& g, std::span<const VertexId> terminals) {
  if (terminals.empty()) throw InputError("Steiner tree needs at least one terminal");
  std::vector<VertexId> unique;
  for (VertexId v : terminals) {
    if (!g.contains(v)) throw InputError("unknown terminal vertex id " + std::to_string(v));
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
  }
  if (unique.size() > kMaxSteinerTerminals || g.vertex_count() > kMaxSteinerVertices) {
    throw CapacityError("exact Steiner solver limited to " + std::to_string(kMaxSteinerTerminals) +
                        " terminals and " + std::to_string(kMaxSteinerVertices) + " vertices (got " +
                        std::to_string(unique.size()) + " terminals, " + std::to_string(g.vertex_count()) +
                        " vertices)");
  }
  auto [optimum, edges] = DreyfusWagner(g, unique).solve();

  // The collected shortest paths can overlap; a minimum spanning forest of
  // their union followed by leaf pruning is a tree of no greater cost.
  std::vector<char> keep(g.vertex_count(), 0);
  for (VertexId v : unique) keep[v] = 1;
  edges = prune_leaves(g, spanning_forest(g, edges), keep);
  Tree tree = Tree::build(g, edges, unique[0]);
  Rational cost = tree.cost();
  if (cost != optimum) throw InternalError("Steiner reconstruction does not match the optimum");
  return SteinerTree{std::move(tree), std::move(cost)};
}

StrategyProfile opt_profile_from_tree(const GameInstance& inst, const Tree& tree) {
  const auto t = inst.single_sink();
  if (!t) throw InputError("OPT profile from a tree requires a single-sink instance");
  std::vector<char> keep(inst.graph().vertex_count(), 0);
  keep[*t] = 1;
  for (const Player& p : inst.players()) {
    if (!tree.contains(p.source)) {
      throw InputError("tree does not span source '" + inst.graph().name(p.source) + "'");
    }
    keep[p.source] = 1;
  }
  if (!tree.contains(*t)) throw InputError("tree does not span the sink");
  std::vector<EdgeId> edges(tree.edges().begin(), tree.edges().end());
  const Tree pruned = Tree::build(inst.graph(), prune_leaves(inst.graph(), std::move(edges), keep), *t);
  StrategyProfile prof;
  for (const Player& p : inst.players()) {
    const auto route = tree_path(pruned, p.source, *t);
    prof.paths.push_back(path_from_edges(inst.graph(), p.source, route));
  }
  return prof;
}

std::vector<Path> enumerate_simple_paths(const Graph& g, VertexId s, VertexId t, std::size_t cap) {
  if (!g.contains(s) || !g.contains(t)) throw InputError("unknown path endpoint");
  std::vector<Path> out;
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[s] = 1;
  Path current = Path::trivial(s);
  enumerate_paths_from(g, s, t, cap, on_path, current, out);
  return out;
}

std::vector<std::vector<Path>> strategy_spaces(const GameInstance& inst, const EnumerationCaps& caps) {
  std::vector<std::vector<Path>> spaces;
  std::size_t product = 1;
  for (const Player& p : inst.players()) {
    spaces.push_back(enumerate_simple_paths(inst.graph(), p.source, p.sink, caps.max_paths_per_player));
    if (spaces.back().empty()) throw ConnectivityError("player has no path to its sink");
    if (product > caps.max_profiles / spaces.back().size()) {
      throw CapacityError("more than " + std::to_string(caps.max_profiles) + " strategy profiles");
    }
    product *= spaces.back().size();
  }
  if (product > caps.max_profiles) {
    throw CapacityError("more than " + std::to_string(caps.max_profiles) + " strategy profiles");
  }
  return spaces;
}

NashCheck is_nash_exhaustive(const GameInstance& inst, const StrategyProfile& prof, const EnumerationCaps& caps) {
  validate_profile(inst, prof);
  std::vector<std::vector<Path>> spaces;
  for (const Player& p : inst.players()) {
    spaces.push_back(enumerate_simple_paths(inst.graph(), p.source, p.sink, caps.max_paths_per_player));
  }
  if (auto share = integer_shares(inst)) return exhaustive_check(inst, spaces, prof, std::move(*share));
  return exhaustive_check(inst, spaces, prof, rational_shares(inst));
}

std::vector<StrategyProfile> enumerate_nash(const GameInstance& inst, const EnumerationCaps& caps) {
  const auto spaces = strategy_spaces(inst, caps);
  if (auto share = integer_shares(inst)) return scan_nash(inst, spaces, std::move(*share));
  return scan_nash(inst, spaces, rational_shares(inst));
}

PriceOfStability price_of_stability_exact(const GameInstance& inst, const EnumerationCaps& caps) {
  const auto spaces = strategy_spaces(inst, caps);
  PriceOfStability r;
  if (auto share = integer_shares(inst)) {
    r = scan_pos(inst, spaces, std::move(*share));
  } else {
    r = scan_pos(inst, spaces, rational_shares(inst));
  }
  r.best_nash_cost = social_cost(inst, r.best_nash);
  r.opt_cost = social_cost(inst, r.opt);
  r.pos = r.opt_cost.is_zero() ? Rational(1) : r.best_nash_cost / r.opt_cost;
  if (r.pos < Rational(1)) throw InternalError("price of stability below 1");
  if (r.pos > harmonic(inst.player_count())) throw InternalError("price of stability above H(n)");
  return r;
}

}  // namespace shapley
