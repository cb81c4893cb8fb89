#include "shapley/certificate.hpp"

#include <algorithm>

#include "shapley/error.hpp"
#include "shapley/exact.hpp"

namespace shapley {
namespace {

Rational frac(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational share_weight(const Rational& c, std::uint32_t f) { return c / frac(f, 1); }
Rational next_share_weight(const Rational& c, std::uint32_t f) { return c / frac(f + 1, 1); }
Rational gap_weight(const Rational& c, std::uint32_t f) { return c / frac(std::uint64_t{f} * (f + 1), 1); }

std::string pair_name(std::string_view kind, std::size_t i, std::size_t j, std::string_view sep) {
  return std::string(kind) + "[" + std::to_string(i) + std::string(sep) + std::to_string(j) + "]";
}

Tree union_tree(const GameInstance& inst, const StrategyProfile& prof, VertexId root) {
  const auto edges = used_edges(prof);
  if (is_tree(inst.graph(), edges)) return Tree::build(inst.graph(), edges, root);
  return Tree::build(inst.graph(), spanning_forest(inst.graph(), edges), root);
}

// sum over edges of the equilibrium of c_e / (f_e (f_e + 1)).
Rational gap_mass(const GameInstance& inst, const EdgeLoadMap& loads) {
  Rational sum;
  for (const auto& [e, f] : loads) sum += gap_weight(inst.graph().edge(e).cost, f);
  return sum;
}

}  // namespace

Rational FrequencyProfile::g(std::uint32_t j) const {
  auto it = g_tail.find(j);
  return it == g_tail.end() ? Rational(0) : it->second;
}

FrequencyProfile frequency_profile(const GameInstance& inst, const StrategyProfile& nash) {
  validate_profile(inst, nash);
  FrequencyProfile fp;
  for (const auto& [e, f] : edge_loads(inst, nash)) fp.f_hist[f] += inst.graph().edge(e).cost;
  const std::uint32_t max_load = fp.f_hist.empty() ? 0 : fp.f_hist.rbegin()->first;
  Rational tail;
  for (std::uint32_t j = max_load; j >= 1; --j) {
    if (auto it = fp.f_hist.find(j); it != fp.f_hist.end()) tail += it->second;
    fp.g_tail[j] = tail;
  }
  fp.nash_cost = tail;
  const Rational half = fp.nash_cost / Rational(2);
  const auto n = static_cast<std::uint32_t>(inst.player_count());
  for (std::uint32_t i = n; i >= 1; --i) {
    if (fp.g(i) >= half) {
      fp.n_half = i;
      break;
    }
  }
  return fp;
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kLessEq: return "<=";
    case Relation::kGreaterEq: return ">=";
    case Relation::kEqual: return "=";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkip: return "skip";
  }
  return "?";
}

std::string_view to_string(Overall o) {
  switch (o) {
    case Overall::kPass: return "pass";
    case Overall::kConditionalPass: return "conditional-pass";
    case Overall::kFail: return "fail";
  }
  return "?";
}

CheckRecord make_check(std::string name, Rational lhs, Relation rel, Rational rhs) {
  bool ok = false;
  switch (rel) {
    case Relation::kLessEq: ok = lhs <= rhs; break;
    case Relation::kGreaterEq: ok = lhs >= rhs; break;
    case Relation::kEqual: ok = lhs == rhs; break;
  }
  return CheckRecord{std::move(name), std::move(lhs), std::move(rhs), rel,
                     ok ? CheckStatus::kPass : CheckStatus::kFail, true};
}

CheckRecord skipped_check(std::string name, Relation rel) {
  return CheckRecord{std::move(name), Rational(0), Rational(0), rel, CheckStatus::kSkip, true};
}

EquilibriumTree::EquilibriumTree(const GameInstance& inst, const StrategyProfile& nash)
    : tree_([&] {
        const auto t = inst.single_sink();
        if (!t) throw PremiseError("equilibrium tree requires a single-sink instance");
        const auto edges = used_edges(nash);
        if (!is_tree(inst.graph(), edges)) throw PremiseError("equilibrium path union is not a tree");
        return Tree::build(inst.graph(), edges, *t);
      }()),
      loads_(edge_loads(inst, nash)) {
  sources_.push_back(tree_.root());
  for (const Player& p : inst.players()) sources_.push_back(p.source);
  for (VertexId s : sources_) distances_.push_back(distances_from(inst.graph(), s));
}

Rational pair_term_A(const EquilibriumTree& nt, std::size_t i, std::size_t j) {
  return nt.climb_sum(i, j, gap_weight) + nt.climb_sum(j, i, gap_weight);
}

std::vector<CheckRecord> deviation_inequality_check(const EquilibriumTree& nt, std::size_t i, std::size_t j) {
  const Rational& d = nt.distance(i, j);
  std::vector<CheckRecord> out;
  out.push_back(make_check(pair_name("deviation", i, j, "->"), nt.climb_sum(i, j, share_weight), Relation::kLessEq,
                           d + nt.climb_sum(j, i, next_share_weight)));
  out.push_back(make_check(pair_name("deviation", j, i, "->"), nt.climb_sum(j, i, share_weight), Relation::kLessEq,
                           d + nt.climb_sum(i, j, next_share_weight)));
  out.push_back(make_check(pair_name("pair_bound", i, j, ","), pair_term_A(nt, i, j), Relation::kLessEq,
                           Rational(2) * d));
  return out;
}

EulerOrderCheck euler_order_bound_check(const GameInstance& inst, const Tree& opt_tree) {
  const auto t = inst.single_sink();
  if (!t) throw InputError("Euler order check requires a single-sink instance");
  std::vector<VertexId> marked{*t};
  for (const Player& p : inst.players()) marked.push_back(p.source);
  EulerOrderCheck out;
  out.phi = euler_first_appearance_order(opt_tree, *t, marked);
  const std::size_t m = out.phi.size();
  for (std::size_t k = 0; k < m; ++k) {
    const VertexId a = marked[out.phi[k]];
    const VertexId b = marked[out.phi[(k + 1) % m]];
    out.distance_sum += shortest_path(inst.graph(), a, b).distance;
  }
  out.record = make_check("euler_tour_bound", out.distance_sum, Relation::kLessEq, Rational(2) * opt_tree.cost());
  return out;
}

std::vector<CheckRecord> coverage_lower_bound_check(const EquilibriumTree& nt, const std::vector<std::size_t>& phi) {
  const std::size_t m = phi.size();
  Rational lhs;
  std::map<EdgeId, std::size_t> crossings;
  for (EdgeId e : nt.tree().edges()) crossings[e] = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t a = phi[k];
    const std::size_t b = phi[(k + 1) % m];
    lhs += pair_term_A(nt, a, b);
    for (EdgeId e : tree_path(nt.tree(), nt.source(a), nt.source(b))) ++crossings[e];
  }
  Rational rhs;
  for (const auto& [e, f] : nt.loads()) rhs += gap_weight(nt.tree().host().edge(e).cost, f);
  rhs *= Rational(2);

  std::int64_t under_two = 0;
  std::int64_t odd = 0;
  for (const auto& [e, count] : crossings) {
    under_two += count < 2 ? 1 : 0;
    odd += count % 2;
  }
  std::vector<CheckRecord> out;
  out.push_back(make_check("coverage", std::move(lhs), Relation::kGreaterEq, std::move(rhs)));
  out.push_back(make_check("coverage_edges_crossed_under_twice", Rational(under_two), Relation::kEqual, Rational(0)));
  out.push_back(make_check("coverage_edges_crossed_odd", Rational(odd), Relation::kEqual, Rational(0)));
  return out;
}

std::vector<CheckRecord> potential_sandwich_check(const GameInstance& inst, const StrategyProfile& opt,
                                                  const StrategyProfile& nash, const FrequencyProfile& freq,
                                                  bool nash_reached_from_opt) {
  const Rational phi_nash = potential(inst, nash);
  const Rational phi_opt = potential(inst, opt);
  const Rational h_half = harmonic(freq.n_half);
  const Rational tail = h_half * freq.g(freq.n_half);
  std::vector<CheckRecord> out;
  out.push_back(make_check("potential_nash_le_opt", phi_nash, Relation::kLessEq, phi_opt));
  out.back().premise_verified = nash_reached_from_opt;
  out.push_back(make_check("potential_nash_tail", phi_nash, Relation::kGreaterEq, tail));
  out.push_back(make_check("potential_tail_half", tail, Relation::kGreaterEq, h_half * freq.nash_cost / Rational(2)));
  out.push_back(make_check("potential_opt_harmonic", phi_opt, Relation::kLessEq,
                           harmonic(inst.player_count()) * social_cost(inst, opt)));
  return out;
}

const CheckRecord* CertificateReport::find(std::string_view name) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CertificateReport bound_report(const GameInstance& inst, const StrategyProfile& opt, const StrategyProfile& nash,
                               const BoundOptions& options) {
  const auto t = inst.single_sink();
  if (!t) throw PremiseError("the bound applies to single-sink instances only");
  validate_profile(inst, opt);
  validate_profile(inst, nash);

  std::vector<VertexId> terminals{*t};
  for (const Player& p : inst.players()) terminals.push_back(p.source);
  const Rational optimum = steiner_tree_exact(inst.graph(), terminals).cost;

  CertificateReport r;
  r.n = inst.player_count();
  r.opt_cost = social_cost(inst, opt);
  r.nash_cost = social_cost(inst, nash);
  if (r.opt_cost > optimum) {
    throw PremiseError("OPT profile costs " + r.opt_cost.str() + " but the optimum is " + optimum.str());
  }
  if (r.opt_cost < optimum) throw InternalError("profile cheaper than the exact Steiner optimum");
  if (!is_nash(inst, nash).is_nash) throw PremiseError("NASH profile is not a Nash equilibrium");

  const FrequencyProfile freq = frequency_profile(inst, nash);
  r.n_half = freq.n_half;
  const Rational nh(r.n_half);
  const Rational h_n = harmonic(r.n);
  const Rational h_half = harmonic(r.n_half);

  const Tree opt_tree = union_tree(inst, opt, *t);
  EulerOrderCheck euler = euler_order_bound_check(inst, opt_tree);
  r.checks.push_back(euler.record);

  r.nash_is_tree = is_tree(inst.graph(), used_edges(nash));
  const EdgeLoadMap loads = edge_loads(inst, nash);
  Rational weighted_mass;  // sum_i f(i) / (i (i + 1))
  Rational head_mass;      // sum_{i <= n_half} f(i)
  Rational head_weighted;  // sum_{i <= n_half} f(i) / (i (i + 1))
  for (const auto& [i, mass] : freq.f_hist) {
    const Rational w = mass / frac(std::uint64_t{i} * (i + 1), 1);
    weighted_mass += w;
    if (i <= r.n_half) {
      head_mass += mass;
      head_weighted += w;
    }
  }

  const std::size_t positions = r.n + 1;
  if (r.nash_is_tree) {
    const EquilibriumTree nt(inst, nash);
    for (std::size_t i = 0; i < positions; ++i) {
      for (std::size_t j = i + 1; j < positions; ++j) {
        for (CheckRecord& c : deviation_inequality_check(nt, i, j)) r.checks.push_back(std::move(c));
      }
    }
    Rational cyclic_a;
    for (std::size_t k = 0; k < positions; ++k) {
      cyclic_a += pair_term_A(nt, euler.phi[k], euler.phi[(k + 1) % positions]);
    }
    r.checks.push_back(make_check("cyclic_pair_bound", cyclic_a, Relation::kLessEq, Rational(2) * euler.distance_sum));
    r.checks.push_back(make_check("cyclic_pair_opt_bound", cyclic_a, Relation::kLessEq, Rational(4) * r.opt_cost));
    for (CheckRecord& c : coverage_lower_bound_check(nt, euler.phi)) r.checks.push_back(std::move(c));
  } else {
    r.checks.push_back(skipped_check("deviation", Relation::kLessEq));
    r.checks.push_back(skipped_check("cyclic_pair_bound", Relation::kLessEq));
    r.checks.push_back(skipped_check("cyclic_pair_opt_bound", Relation::kLessEq));
    r.checks.push_back(skipped_check("coverage", Relation::kGreaterEq));
    r.checks.push_back(skipped_check("coverage_edges_crossed_under_twice", Relation::kEqual));
    r.checks.push_back(skipped_check("coverage_edges_crossed_odd", Relation::kEqual));
  }

  r.checks.push_back(make_check("frequency_identity", Rational(2) * gap_mass(inst, loads), Relation::kEqual,
                                Rational(2) * weighted_mass));
  for (CheckRecord& c : potential_sandwich_check(inst, opt, nash, freq, options.nash_reached_from_opt)) {
    r.checks.push_back(std::move(c));
  }
  const Rational harmonic_factor = Rational(2) * h_n / h_half;
  const Rational quadratic_factor = Rational(4) * nh * (nh + Rational(1));
  r.checks.push_back(make_check("harmonic_bound", r.nash_cost, Relation::kLessEq, harmonic_factor * r.opt_cost));
  r.checks.push_back(make_check("half_mass_head", head_mass, Relation::kGreaterEq, r.nash_cost / Rational(2)));
  r.checks.push_back(make_check("head_weighting", head_weighted, Relation::kGreaterEq,
                                head_mass / (nh * (nh + Rational(1)))));
  if (r.nash_is_tree) {
    r.checks.push_back(make_check("weighted_mass", weighted_mass, Relation::kLessEq, Rational(2) * r.opt_cost));
    r.checks.push_back(make_check("quadratic_bound", r.nash_cost, Relation::kLessEq, quadratic_factor * r.opt_cost));
  } else {
    r.checks.push_back(skipped_check("weighted_mass", Relation::kLessEq));
    r.checks.push_back(skipped_check("quadratic_bound", Relation::kLessEq));
  }

  r.bound_value = min(harmonic_factor, quadratic_factor);
  r.actual_ratio = r.opt_cost.is_zero() ? Rational(1) : r.nash_cost / r.opt_cost;
  r.checks.push_back(make_check("ratio_bound", r.actual_ratio, Relation::kLessEq, r.bound_value));

  const bool any_fail = std::any_of(r.checks.begin(), r.checks.end(),
                                    [](const CheckRecord& c) { return c.status == CheckStatus::kFail; });
  const bool any_skip = std::any_of(r.checks.begin(), r.checks.end(),
                                    [](const CheckRecord& c) { return c.status == CheckStatus::kSkip; });
  r.overall = any_fail ? Overall::kFail : (any_skip ? Overall::kConditionalPass : Overall::kPass);
  return r;
}

Certification certify(const GameInstance& inst, const CertifyOptions& options) {
  if (!inst.single_sink()) throw PremiseError("certification requires a single-sink instance");
  FromOptRun run = dynamics_from_opt(inst, options.cap, options.policy);
  if (!run.trace.terminated) {
    throw PremiseError("better-response dynamics did not reach an equilibrium within " +
                       std::to_string(options.cap) + " steps");
  }
  TreeifyResult tf = treeify(inst, run.nash);
  Certification c;
  c.report = bound_report(inst, run.opt, tf.profile, BoundOptions{run.trace.terminated});
  c.trace = std::move(run.trace);
  c.treeified = tf.changed;
  c.opt = std::move(run.opt);
  c.nash = std::move(tf.profile);
  return c;
}

Certification certify_equilibrium(const GameInstance& inst, const StrategyProfile& nash) {
  const auto t = inst.single_sink();
  if (!t) throw PremiseError("certification requires a single-sink instance");
  std::vector<VertexId> terminals{*t};
  for (const Player& p : inst.players()) terminals.push_back(p.source);
  const SteinerTree st = steiner_tree_exact(inst.graph(), terminals);
  Certification c;
  c.opt = opt_profile_from_tree(inst, st.tree);
  c.report = bound_report(inst, c.opt, nash, BoundOptions{false});
  c.trace.terminated = true;
  c.nash = nash;
  return c;
}

}  // namespace shapley
