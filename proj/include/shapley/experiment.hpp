#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapley/certificate.hpp"
#include "shapley/generators.hpp"

namespace shapley::experiment {

struct Sweep {
  std::string kind;
  std::map<std::string, std::vector<std::string>> params;  // cartesian product, key order
  std::vector<std::uint64_t> seeds;
};

// Config file:
//   {"policy": "best", "cap": 1000000, "threads": 4,
//    "sweeps": [{"kind": "fan", "params": {"k": [2, 3]}, "seeds": {"start": 0, "count": 100}}]}
// Parameter values may be scalars or arrays; seeds may also be an explicit array.
struct Config {
  std::vector<Sweep> sweeps;
  Policy policy = Policy::kBestImprovement;
  std::uint64_t cap = kDefaultDynamicsCap;
  unsigned threads = 0;  // 0: hardware concurrency
};

Config config_from_json(const nlohmann::json& doc);

struct Row {
  std::string kind;
  std::string params;  // "k=2;hub=1"
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Rational opt;
  Rational nash;
  Rational ratio;
  std::uint32_t n_half = 0;
  Rational bound;
  std::string status;  // pass | conditional-pass | fail | premise-error | capacity-error | error
  std::uint64_t iterations = 0;
  std::string error;
};

struct PerN {
  std::size_t instances = 0;
  Rational max_ratio;
  Rational max_bound_over_harmonic;
};

struct Summary {
  std::size_t rows = 0;
  Rational max_ratio;
  Rational max_ratio_over_bound;
  bool ratio_within_bound = true;  // every certified row has ratio <= bound
  std::map<std::string, std::size_t> status_counts;
  std::map<std::size_t, PerN> per_n;
};

/// Certifies every (sweep, parameter combination, seed) in configuration
/// order. Instances are processed concurrently; the row order is not.
std::vector<Row> run(const Config& config);
Summary summarize(const std::vector<Row>& rows);

std::string to_csv(const std::vector<Row>& rows, const Summary& summary);
nlohmann::json to_json(const std::vector<Row>& rows, const Summary& summary);

}  // namespace shapley::experiment
