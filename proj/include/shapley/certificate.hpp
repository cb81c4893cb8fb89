#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapley/dynamics.hpp"
#include "shapley/game.hpp"
#include "shapley/tree.hpp"

namespace shapley {

/// Cost mass of the equilibrium by edge load.
struct FrequencyProfile {
  std::map<std::uint32_t, Rational> f_hist;  // load i -> cost of edges with load exactly i
  std::map<std::uint32_t, Rational> g_tail;  // j -> cost of edges with load >= j, j = 1..max load
  std::uint32_t n_half = 1;                  // max{ i in 1..n : g(i) >= nash_cost / 2 }
  Rational nash_cost;

  Rational g(std::uint32_t j) const;
};

FrequencyProfile frequency_profile(const GameInstance& inst, const StrategyProfile& nash);

enum class Relation { kLessEq, kGreaterEq, kEqual };
enum class CheckStatus { kPass, kFail, kSkip };
enum class Overall { kPass, kConditionalPass, kFail };

std::string_view to_string(Relation r);
std::string_view to_string(CheckStatus s);
std::string_view to_string(Overall o);

struct CheckRecord {
  std::string name;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::kLessEq;
  CheckStatus status = CheckStatus::kPass;
  /// False when the inequality was evaluated but a premise it relies on was
  /// not established (e.g. NASH not reached from OPT by recorded dynamics).
  bool premise_verified = true;
};

/// Evaluates `lhs relation rhs` exactly.
CheckRecord make_check(std::string name, Rational lhs, Relation rel, Rational rhs);
CheckRecord skipped_check(std::string name, Relation rel);

/// Players indexed as in the bound argument: position 0 is the dummy player
/// sitting at the sink, positions 1..n are the instance's players.
class EquilibriumTree {
 public:
  /// Throws PremiseError if the equilibrium's path union is not a tree.
  EquilibriumTree(const GameInstance& inst, const StrategyProfile& nash);

  const Tree& tree() const { return tree_; }
  const EdgeLoadMap& loads() const { return loads_; }
  VertexId source(std::size_t k) const { return sources_.at(k); }
  std::size_t positions() const { return sources_.size(); }
  /// Shortest-path distance d(s_i, s_j) in the whole graph.
  const Rational& distance(std::size_t i, std::size_t j) const { return distances_.at(i).at(sources_.at(j)); }

  /// sum over e on the path from s_i up to LCA(s_i, s_j) of w(c_e, f_e).
  template <typename Weight>
  Rational climb_sum(std::size_t i, std::size_t j, Weight&& w) const {
    Rational sum;
    const VertexId top = lca(tree_, source(i), source(j));
    for (EdgeId e : tree_.path_to_ancestor(source(i), top)) sum += w(tree_.host().edge(e).cost, loads_.at(e));
    return sum;
  }

 private:
  Tree tree_;
  EdgeLoadMap loads_;
  std::vector<VertexId> sources_;
  std::vector<std::vector<Rational>> distances_;
};

/// A(i, j): both LCA subpaths weighted by c_e / (f_e (f_e + 1)).
Rational pair_term_A(const EquilibriumTree& nt, std::size_t i, std::size_t j);

/// The two unilateral deviation bounds for (i, j) and their sum A(i,j) <= 2 d(s_i, s_j).
std::vector<CheckRecord> deviation_inequality_check(const EquilibriumTree& nt, std::size_t i, std::size_t j);

struct EulerOrderCheck {
  std::vector<std::size_t> phi;  // positions 0..n ordered by first appearance; phi[0] == 0
  Rational distance_sum;         // cyclic sum of d(phi(k), phi(k+1))
  CheckRecord record;
};

/// Orders the dummy player and all sources along the doubled-edge tour of the
/// OPT tree and checks that the cyclic distance sum is at most twice its cost.
EulerOrderCheck euler_order_bound_check(const GameInstance& inst, const Tree& opt_tree);

/// Coverage inequality: sum of A over cyclically consecutive phi pairs is at
/// least 2 sum_e c_e / (f_e (f_e + 1)). Also returns the per-edge crossing
/// counts checks (every tree edge crossed an even number >= 2 of times).
std::vector<CheckRecord> coverage_lower_bound_check(const EquilibriumTree& nt, const std::vector<std::size_t>& phi);

/// Phi(NASH) <= Phi(OPT), Phi(NASH) >= H(n_half) g(n_half) >= H(n_half) |NASH| / 2,
/// Phi(OPT) <= H(n) |OPT|.
std::vector<CheckRecord> potential_sandwich_check(const GameInstance& inst, const StrategyProfile& opt,
                                                  const StrategyProfile& nash, const FrequencyProfile& freq,
                                                  bool nash_reached_from_opt = true);

struct CertificateReport {
  std::vector<CheckRecord> checks;
  Rational opt_cost;
  Rational nash_cost;
  Rational bound_value;
  Rational actual_ratio;
  std::size_t n = 0;
  std::uint32_t n_half = 1;
  bool nash_is_tree = false;
  Overall overall = Overall::kFail;

  const CheckRecord* find(std::string_view name) const;
};

struct BoundOptions {
  /// NASH was produced from OPT by recorded, terminated better-response dynamics.
  bool nash_reached_from_opt = true;
};

/// Runs every check of the single-sink bound argument and combines them.
/// Throws PremiseError if the instance is multi-sink, `opt` costs more than
/// the exact Steiner optimum, or `nash` is not an equilibrium.
CertificateReport bound_report(const GameInstance& inst, const StrategyProfile& opt, const StrategyProfile& nash,
                               const BoundOptions& options = {});

struct CertifyOptions {
  Policy policy = Policy::kBestImprovement;
  std::uint64_t cap = kDefaultDynamicsCap;
};

struct Certification {
  CertificateReport report;
  DynamicsTrace trace;
  bool treeified = false;
  StrategyProfile opt;
  StrategyProfile nash;
};

/// Steiner optimum -> OPT profile -> dynamics -> treeify -> bound_report.
Certification certify(const GameInstance& inst, const CertifyOptions& options = {});

/// Certifies a caller-supplied equilibrium against the exact optimum. No
/// dynamics are run, so the potential premise is marked unverified and may
/// fail for equilibria worse than the best one.
Certification certify_equilibrium(const GameInstance& inst, const StrategyProfile& nash);

}  // namespace shapley
