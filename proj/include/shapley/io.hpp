#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapley/certificate.hpp"
#include "shapley/game.hpp"

namespace shapley::io {

// Instance files:
//   {"vertices": ["s1", ...],
//    "edges":    [{"u": "s1", "v": "m", "cost": "1/1"}, ...],
//    "players":  [{"source": "s1", "sink": "t"}, ...],
//    "sink":     "t"}            // optional
// Costs are "p/q" or integer strings. All parse failures throw ParseError.

nlohmann::json instance_to_json(const GameInstance& inst);
GameInstance instance_from_json(const nlohmann::json& doc);

/// Canonical text form (sorted keys, two-space indent, trailing newline).
std::string write_instance(const GameInstance& inst);
GameInstance read_instance(std::string_view text);
GameInstance load_instance(const std::string& path);

/// Lowercase hex SHA-256 of the canonical instance text.
std::string instance_digest(const GameInstance& inst);

// Profile files: {"paths": [[0, 2], [1, 2]]}, one list of edge indices
// (positions in the instance's "edges" array) per player, in walking order
// from the player's source. A player whose source is its sink has [].
StrategyProfile profile_from_json(const GameInstance& inst, const nlohmann::json& doc);
nlohmann::json profile_to_json(const StrategyProfile& prof);
StrategyProfile load_profile(const GameInstance& inst, const std::string& path);

struct ReportCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  std::string relation;
  std::string status;  // pass | fail | skip
  bool operator==(const ReportCheck&) const = default;
};

/// The serialized form of a certification run.
struct ReportFile {
  std::string instance_digest;
  Rational opt_cost;
  Rational nash_cost;
  Rational ratio;
  Rational bound_value;
  std::uint64_t n = 0;
  std::uint64_t n_half = 0;
  std::vector<ReportCheck> checks;
  std::uint64_t iterations = 0;
  bool terminated = false;
  bool treeified = false;
  std::string overall;
  bool operator==(const ReportFile&) const = default;
};

ReportFile make_report_file(const GameInstance& inst, const Certification& cert);

nlohmann::json report_to_json(const ReportFile& report);
ReportFile report_from_json(const nlohmann::json& doc);

std::string write_report_json(const ReportFile& report);
/// name,lhs,rhs,relation,status rows preceded by summary comment lines.
std::string write_report_csv(const ReportFile& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace shapley::io
