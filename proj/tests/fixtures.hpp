#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "shapley/game.hpp"

namespace shapley::testing {

// Vertices s1, s2, m, t; edges s1-m:1, s2-m:1, m-t:2, s1-t:2, s2-t:2 (ids 0..4);
// players s1->t and s2->t.
GameInstance y_instance();

// Two vertices s, t joined by one edge of cost `cost`; one player s->t.
GameInstance single_edge_instance(Rational cost = Rational(1));

// Path through the named vertices; between consecutive vertices the
// lowest-id edge is used.
Path named_path(const Graph& g, std::initializer_list<const char*> names);

// Y-instance profiles.
StrategyProfile y_star_profile(const GameInstance& y);         // both via m
StrategyProfile y_direct_profile(const GameInstance& y);       // both on their direct edge
StrategyProfile y_mixed_profile(const GameInstance& y);        // s1 direct, s2 via m

// Random connected graph: random spanning tree plus `extra` random edges
// (parallel edges possible), integer costs in [0 or 1, max_cost].
Graph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t extra, std::int64_t max_cost,
                   bool allow_zero = false);

// Single-sink instance on a random graph: sink vertex 0, n random sources.
GameInstance random_single_sink(std::mt19937_64& rng, std::size_t vertices, std::size_t players,
                                std::size_t extra, std::int64_t max_cost = 9);

// Multi-sink instance with random (source, sink) pairs.
GameInstance random_multi_sink(std::mt19937_64& rng, std::size_t vertices, std::size_t players, std::size_t extra,
                               std::int64_t max_cost = 9);

// Random simple s-t path (randomized DFS).
Path random_simple_path(std::mt19937_64& rng, const Graph& g, VertexId s, VertexId t);
StrategyProfile random_profile(std::mt19937_64& rng, const GameInstance& inst);

}  // namespace shapley::testing
