#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shapley/game.hpp"

namespace shapley::gen {

/// Generator parameters as text, e.g. {"k": "3", "spoke": "1,0,2"}.
using Params = std::map<std::string, std::string>;

/// Families: "fan", "random-connected", "grid", "shared-path".
///
/// fan:              k sources s1..sk, hub m, sink t; edges s_i-m ("spoke"),
///                   m-t ("hub"), s_i-t ("direct"). Spoke and direct take a
///                   single rational or a comma list of k; unset costs are
///                   drawn from 1..max_cost.
/// random-connected: "vertices", "players", "extra_edges", "max_cost".
/// grid:             "rows", "cols", "players", "max_cost"; sink at a corner.
/// shared-path:      "length", "players", "max_cost"; players on a path to
///                   t, each distinct source also gets a private bypass edge.
///
/// Output is a connected single-sink instance, deterministic in (kind, params, seed).
/// Throws InputError on unknown kinds or bad parameters.
GameInstance generate(std::string_view kind, const Params& params, std::uint64_t seed);

const std::vector<std::string>& kinds();

}  // namespace shapley::gen
