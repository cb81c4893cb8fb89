#include "shapley/experiment.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "shapley/error.hpp"

namespace shapley::experiment {
namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ParseError("parameter values must be integers or strings");
}

struct Job {
  std::string kind;
  gen::Params params;
  std::string params_text;
  std::uint64_t seed;
};

std::vector<Job> expand(const Config& config) {
  std::vector<Job> jobs;
  for (const Sweep& sweep : config.sweeps) {
    std::vector<std::pair<std::string, std::vector<std::string>>> axes(sweep.params.begin(), sweep.params.end());
    std::vector<std::size_t> idx(axes.size(), 0);
    bool empty_axis = false;
    for (const auto& a : axes) empty_axis = empty_axis || a.second.empty();
    if (empty_axis) continue;
    for (;;) {
      gen::Params params;
      std::string text;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        params[axes[a].first] = axes[a].second[idx[a]];
        text += (a ? ";" : "") + axes[a].first + "=" + axes[a].second[idx[a]];
      }
      for (std::uint64_t seed : sweep.seeds) jobs.push_back({sweep.kind, params, text, seed});
      bool advanced = false;
      for (std::size_t a = axes.size(); a > 0 && !advanced;) {
        --a;
        advanced = ++idx[a] < axes[a].second.size();
        if (!advanced) idx[a] = 0;
      }
      if (!advanced) break;
    }
  }
  return jobs;
}

Row run_one(const Job& job, const Config& config) {
  Row row;
  row.kind = job.kind;
  row.params = job.params_text;
  row.seed = job.seed;
  try {
    const GameInstance inst = gen::generate(job.kind, job.params, job.seed);
    row.n = inst.player_count();
    row.vertices = inst.graph().vertex_count();
    row.edges = inst.graph().edge_count();
    const Certification cert = certify(inst, CertifyOptions{config.policy, config.cap});
    row.opt = cert.report.opt_cost;
    row.nash = cert.report.nash_cost;
    row.ratio = cert.report.actual_ratio;
    row.n_half = cert.report.n_half;
    row.bound = cert.report.bound_value;
    row.status = std::string(to_string(cert.report.overall));
    row.iterations = cert.trace.iterations;
  } catch (const PremiseError& e) {
    row.status = "premise-error";
    row.error = e.what();
  } catch (const CapacityError& e) {
    row.status = "capacity-error";
    row.error = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

bool certified(const Row& r) { return r.status == "pass" || r.status == "conditional-pass" || r.status == "fail"; }

}  // namespace

Config config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("experiment config must be a JSON object");
  Config c;
  if (doc.contains("policy")) {
    const std::string p = doc.at("policy").get<std::string>();
    if (p == "best") {
      c.policy = Policy::kBestImprovement;
    } else if (p == "first") {
      c.policy = Policy::kFirstImprovement;
    } else {
      throw ParseError("policy must be 'best' or 'first'");
    }
  }
  try {
    if (doc.contains("cap")) c.cap = doc.at("cap").get<std::uint64_t>();
    if (doc.contains("threads")) c.threads = doc.at("threads").get<unsigned>();
    if (!doc.contains("sweeps") || !doc.at("sweeps").is_array()) throw ParseError("config needs a 'sweeps' array");
    for (const json& s : doc.at("sweeps")) {
      Sweep sweep;
      sweep.kind = s.at("kind").get<std::string>();
      if (s.contains("params")) {
        for (const auto& [key, value] : s.at("params").items()) {
          auto& values = sweep.params[key];
          if (value.is_array()) {
            for (const json& v : value) values.push_back(scalar_text(v));
          } else {
            values.push_back(scalar_text(value));
          }
        }
      }
      const json& seeds = s.contains("seeds") ? s.at("seeds") : json::array({0});
      if (seeds.is_array()) {
        for (const json& v : seeds) sweep.seeds.push_back(v.get<std::uint64_t>());
      } else {
        const auto start = seeds.value("start", std::uint64_t{0});
        const auto count = seeds.at("count").get<std::uint64_t>();
        for (std::uint64_t k = 0; k < count; ++k) sweep.seeds.push_back(start + k);
      }
      c.sweeps.push_back(std::move(sweep));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad experiment config: ") + e.what());
  }
  return c;
}

std::vector<Row> run(const Config& config) {
  const std::vector<Job> jobs = expand(config);
  std::vector<Row> rows(jobs.size());
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) rows[k] = run_one(jobs[k], config);
      });
    }
  }
  return rows;
}

Summary summarize(const std::vector<Row>& rows) {
  Summary s;
  s.rows = rows.size();
  for (const Row& r : rows) {
    ++s.status_counts[r.status];
    if (!certified(r)) continue;
    s.max_ratio = max(s.max_ratio, r.ratio);
    s.max_ratio_over_bound = max(s.max_ratio_over_bound, r.ratio / r.bound);
    s.ratio_within_bound = s.ratio_within_bound && r.ratio <= r.bound;
    PerN& p = s.per_n[r.n];
    ++p.instances;
    p.max_ratio = max(p.max_ratio, r.ratio);
    p.max_bound_over_harmonic = max(p.max_bound_over_harmonic, r.bound / harmonic(r.n));
  }
  return s;
}

std::string to_csv(const std::vector<Row>& rows, const Summary& summary) {
  std::ostringstream os;
  os << "kind,params,seed,n,vertices,edges,opt,nash,ratio,n_half,bound,status,iterations\n";
  for (const Row& r : rows) {
    os << r.kind << ",\"" << r.params << "\"," << r.seed << ',' << r.n << ',' << r.vertices << ',' << r.edges << ','
       << r.opt << ',' << r.nash << ',' << r.ratio << ',' << r.n_half << ',' << r.bound << ',' << r.status << ','
       << r.iterations << "\n";
  }
  if (rows.empty()) return os.str();
  os << "summary,\"max_ratio_over_bound=" << summary.max_ratio_over_bound << "\",,,,,,,"
     << summary.max_ratio << ",,,"
     << (summary.ratio_within_bound ? "within-bound" : "bound-exceeded") << ",\n";
  for (const auto& [n, p] : summary.per_n) {
    os << "summary-n,\"bound_over_harmonic=" << p.max_bound_over_harmonic << "\",," << n << ",,,,," << p.max_ratio
       << ",,,," << p.instances << "\n";
  }
  return os.str();
}

json to_json(const std::vector<Row>& rows, const Summary& summary) {
  json doc;
  doc["rows"] = json::array();
  for (const Row& r : rows) {
    json j{{"kind", r.kind},         {"params", r.params},     {"seed", r.seed},
           {"n", r.n},               {"vertices", r.vertices}, {"edges", r.edges},
           {"opt", r.opt.str()},     {"nash", r.nash.str()},   {"ratio", r.ratio.str()},
           {"n_half", r.n_half},     {"bound", r.bound.str()}, {"status", r.status},
           {"iterations", r.iterations}};
    if (!r.error.empty()) j["error"] = r.error;
    doc["rows"].push_back(std::move(j));
  }
  json s{{"rows", summary.rows},
         {"max_ratio", summary.max_ratio.str()},
         {"max_ratio_over_bound", summary.max_ratio_over_bound.str()},
         {"ratio_within_bound", summary.ratio_within_bound},
         {"status_counts", summary.status_counts}};
  s["per_n"] = json::array();
  for (const auto& [n, p] : summary.per_n) {
    s["per_n"].push_back({{"n", n},
                          {"instances", p.instances},
                          {"max_ratio", p.max_ratio.str()},
                          {"max_bound_over_harmonic", p.max_bound_over_harmonic.str()},
                          {"max_bound_over_harmonic_approx", p.max_bound_over_harmonic.to_double()}});
  }
  doc["summary"] = std::move(s);
  return doc;
}

}  // namespace shapley::experiment
