#include "shapley/cli.hpp"

#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shapley/certificate.hpp"
#include "shapley/error.hpp"
#include "shapley/exact.hpp"
#include "shapley/experiment.hpp"
#include "shapley/generators.hpp"
#include "shapley/io.hpp"

namespace shapley::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string instance;
  std::string output;
  std::string format = "json";
  std::string policy = "best";
  std::uint64_t cap = kDefaultDynamicsCap;
  std::uint64_t seed = 0;
  std::string kind;
  std::vector<std::string> params;
  std::size_t caps_profiles = EnumerationCaps{}.max_profiles;
  std::size_t caps_paths = EnumerationCaps{}.max_paths_per_player;
  unsigned threads = 0;
  std::string nash;
};

Policy parse_policy(const std::string& p) { return p == "first" ? Policy::kFirstImprovement : Policy::kBestImprovement; }

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
  } else {
    io::write_file(o.output, text);
  }
}

json path_json(const Graph& g, const Path& p) {
  json names = json::array();
  for (VertexId v : p.vertices) names.push_back(g.name(v));
  return names;
}

json profile_json(const GameInstance& inst, const StrategyProfile& prof) {
  json paths = json::array();
  for (const Path& p : prof.paths) paths.push_back(path_json(inst.graph(), p));
  return paths;
}

int cmd_gen(const Options& o, std::ostream& out) {
  gen::Params params;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("parameter '" + kv + "' must look like key=value");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  emit(o, io::write_instance(gen::generate(o.kind, params, o.seed)), out);
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const GameInstance inst = io::load_instance(o.instance);
  const auto t = inst.single_sink();
  if (!t) throw PremiseError("solve handles single-sink instances");
  std::vector<VertexId> terminals{*t};
  for (const Player& p : inst.players()) terminals.push_back(p.source);
  const SteinerTree st = steiner_tree_exact(inst.graph(), terminals);
  const StrategyProfile opt = opt_profile_from_tree(inst, st.tree);
  json doc{{"opt_cost", st.cost.str()}, {"paths", profile_json(inst, opt)}, {"potential", potential(inst, opt).str()}};
  emit(o, doc.dump(2) + "\n", out);
  return kOk;
}

int cmd_dynamics(const Options& o, std::ostream& out) {
  const GameInstance inst = io::load_instance(o.instance);
  const FromOptRun run = dynamics_from_opt(inst, o.cap, parse_policy(o.policy));
  json steps = json::array();
  for (const DynamicsStep& s : run.trace.steps) {
    steps.push_back({{"player", s.player},
                     {"new_path", path_json(inst.graph(), s.new_path)},
                     {"potential_after", s.potential_after.str()}});
  }
  json doc{{"opt_cost", social_cost(inst, run.opt).str()},
           {"nash_cost", social_cost(inst, run.nash).str()},
           {"opt_potential", potential(inst, run.opt).str()},
           {"nash_potential", potential(inst, run.nash).str()},
           {"nash_paths", profile_json(inst, run.nash)},
           {"steps", steps},
           {"iterations", run.trace.iterations},
           {"terminated", run.trace.terminated}};
  emit(o, doc.dump(2) + "\n", out);
  return run.trace.terminated ? kOk : kPremiseError;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const GameInstance inst = io::load_instance(o.instance);
  const Certification cert = o.nash.empty() ? certify(inst, CertifyOptions{parse_policy(o.policy), o.cap})
                                            : certify_equilibrium(inst, io::load_profile(inst, o.nash));
  const io::ReportFile report = io::make_report_file(inst, cert);
  emit(o, o.format == "csv" ? io::write_report_csv(report) : io::write_report_json(report), out);
  return cert.report.overall == Overall::kFail ? kCheckFailure : kOk;
}

int cmd_pos(const Options& o, std::ostream& out) {
  const GameInstance inst = io::load_instance(o.instance);
  const PriceOfStability r = price_of_stability_exact(inst, EnumerationCaps{o.caps_profiles, o.caps_paths});
  json doc{{"pos", r.pos.str()},
           {"best_nash_cost", r.best_nash_cost.str()},
           {"opt_cost", r.opt_cost.str()},
           {"nash_count", r.nash_count},
           {"profile_count", r.profile_count},
           {"best_nash_paths", profile_json(inst, r.best_nash)}};
  if (o.format == "csv") {
    emit(o, "pos,best_nash_cost,opt_cost\n" + r.pos.str() + "," + r.best_nash_cost.str() + "," + r.opt_cost.str() + "\n",
         out);
  } else {
    emit(o, doc.dump(2) + "\n", out);
  }
  return kOk;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  json doc = json::parse(io::read_file(o.instance), nullptr, false);
  if (doc.is_discarded()) throw ParseError("experiment config is not valid JSON");
  experiment::Config config = experiment::config_from_json(doc);
  if (o.threads) config.threads = o.threads;
  const auto rows = experiment::run(config);
  const auto summary = experiment::summarize(rows);
  emit(o, o.format == "csv" ? experiment::to_csv(rows, summary) : experiment::to_json(rows, summary).dump(2) + "\n",
       out);
  return summary.ratio_within_bound && !summary.status_counts.contains("fail") ? kOk : kCheckFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shapley network design games: exact optima, dynamics, price-of-stability certificates"};
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    if (with_format) sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_dynamics = [&](CLI::App* sub) {
    sub->add_option("--policy", o.policy, "Better-response schedule")->check(CLI::IsMember({"best", "first"}));
    sub->add_option("--cap", o.cap, "Maximum better-response moves")->check(CLI::PositiveNumber);
  };

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", o.kind, "Instance family")->required()->check(CLI::IsMember(gen::kinds()));
  gen_cmd->add_option("--param,-p", o.params, "Generator parameter key=value (repeatable)");
  gen_cmd->add_option("--seed", o.seed, "64-bit seed");
  add_output(gen_cmd, false);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Exact optimum (Steiner tree) of a single-sink instance");
  solve_cmd->add_option("instance", o.instance)->required();
  add_output(solve_cmd, false);

  CLI::App* dyn_cmd = app.add_subcommand("dynamics", "Better-response dynamics started from the optimum");
  dyn_cmd->add_option("instance", o.instance)->required();
  add_dynamics(dyn_cmd);
  add_output(dyn_cmd, false);

  CLI::App* cert_cmd = app.add_subcommand("certify", "Verify the price-of-stability bound on one instance");
  cert_cmd->add_option("instance", o.instance)->required();
  add_dynamics(cert_cmd);
  cert_cmd->add_option("--nash", o.nash, "Certify this equilibrium (profile file) instead of running dynamics");
  cert_cmd->add_option("--seed", o.seed, "Accepted for interface compatibility; certification is deterministic");
  add_output(cert_cmd, true);

  CLI::App* pos_cmd = app.add_subcommand("pos", "Exact price of stability by full enumeration");
  pos_cmd->add_option("instance", o.instance)->required();
  pos_cmd->add_option("--caps-profiles", o.caps_profiles, "Maximum strategy profiles");
  pos_cmd->add_option("--caps-paths", o.caps_paths, "Maximum simple paths per player");
  add_output(pos_cmd, true);

  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a configured sweep of certifications");
  exp_cmd->add_option("config", o.instance)->required();
  exp_cmd->add_option("--threads", o.threads, "Worker threads (default: config or hardware)");
  add_output(exp_cmd, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(o, out);
    if (*solve_cmd) return cmd_solve(o, out);
    if (*dyn_cmd) return cmd_dynamics(o, out);
    if (*cert_cmd) return cmd_certify(o, out);
    if (*pos_cmd) return cmd_pos(o, out);
    if (*exp_cmd) return cmd_experiment(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const PremiseError& e) {
    err << "premise error: " << e.what() << "\n";
    return kPremiseError;
  } catch (const ConnectivityError& e) {
    err << "premise error: " << e.what() << "\n";
    return kPremiseError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace shapley::cli
