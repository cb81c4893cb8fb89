#include "shapley/generators.hpp"

#include <random>
#include <sstream>

#include "shapley/error.hpp"

namespace shapley::gen {
namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  // Uniform-ish in [lo, hi]; modulo keeps output identical across standard libraries.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

std::int64_t int_param(const Params& p, const std::string& key, std::int64_t fallback, std::int64_t lo,
                       std::int64_t hi) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::int64_t v = 0;
  try {
    std::size_t used = 0;
    v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
  } catch (const std::exception&) {
    throw InputError("parameter '" + key + "' must be an integer, got '" + it->second + "'");
  }
  if (v < lo || v > hi) {
    throw InputError("parameter '" + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

// A single rational or a comma list of `count` rationals; empty when unset.
std::vector<Rational> cost_list(const Params& p, const std::string& key, std::size_t count) {
  auto it = p.find(key);
  if (it == p.end()) return {};
  std::vector<Rational> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational r = Rational::parse(item);
    if (r.sign() < 0) throw InputError("parameter '" + key + "' must be nonnegative");
    out.push_back(std::move(r));
  }
  if (out.size() == 1) out.assign(count, out.front());
  if (out.size() != count) {
    throw InputError("parameter '" + key + "' needs 1 or " + std::to_string(count) + " values");
  }
  return out;
}

void require_known(const Params& p, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (std::string_view k : known) ok = ok || key == k;
    if (!ok) throw InputError("unknown generator parameter '" + key + "'");
  }
}

GameInstance fan(const Params& p, Draw& draw) {
  require_known(p, {"k", "spoke", "hub", "direct", "max_cost"});
  const auto k = static_cast<std::size_t>(int_param(p, "k", 2, 1, 64));
  const std::int64_t max_cost = int_param(p, "max_cost", 10, 1, 1'000'000);
  auto fill = [&](std::vector<Rational> v, std::size_t count) {
    if (v.empty()) {
      for (std::size_t i = 0; i < count; ++i) v.emplace_back(draw.between(1, max_cost));
    }
    return v;
  };
  const auto spoke = fill(cost_list(p, "spoke", k), k);
  const auto hub = fill(cost_list(p, "hub", 1), 1);
  const auto direct = fill(cost_list(p, "direct", k), k);

  Graph g;
  for (std::size_t i = 1; i <= k; ++i) g.add_vertex("s" + std::to_string(i));
  const VertexId m = g.add_vertex("m");
  const VertexId t = g.add_vertex("t");
  for (VertexId i = 0; i < k; ++i) g.add_edge(i, m, spoke[i]);
  g.add_edge(m, t, hub[0]);
  for (VertexId i = 0; i < k; ++i) g.add_edge(i, t, direct[i]);
  std::vector<Player> players;
  for (VertexId i = 0; i < k; ++i) players.push_back({i, t});
  return GameInstance(std::move(g), std::move(players), t);
}

std::vector<Player> random_players(Draw& draw, std::size_t n, VertexId sink, std::size_t vertices) {
  std::vector<Player> players;
  for (std::size_t i = 0; i < n; ++i) {
    auto s = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(vertices) - 2));
    if (s >= sink) ++s;  // sources avoid the sink
    players.push_back({s, sink});
  }
  return players;
}

GameInstance random_connected(const Params& p, Draw& draw) {
  require_known(p, {"vertices", "players", "extra_edges", "max_cost"});
  const auto v = static_cast<std::size_t>(int_param(p, "vertices", 8, 2, 50));
  const auto n = static_cast<std::size_t>(int_param(p, "players", 3, 1, 64));
  const auto extra = int_param(p, "extra_edges", static_cast<std::int64_t>(v), 0, 10'000);
  const std::int64_t max_cost = int_param(p, "max_cost", 10, 1, 1'000'000);
  Graph g;
  for (std::size_t i = 0; i < v; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 1; i < v; ++i) {
    const auto parent = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(i) - 1));
    g.add_edge(parent, static_cast<VertexId>(i), Rational(draw.between(1, max_cost)));
  }
  for (std::int64_t k = 0; k < extra; ++k) {
    const auto a = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(v) - 1));
    auto b = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(v) - 2));
    if (b >= a) ++b;
    g.add_edge(a, b, Rational(draw.between(1, max_cost)));
  }
  const auto sink = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(v) - 1));
  auto players = random_players(draw, n, sink, v);
  return GameInstance(std::move(g), std::move(players), sink);
}

GameInstance grid(const Params& p, Draw& draw) {
  require_known(p, {"rows", "cols", "players", "max_cost"});
  const auto rows = static_cast<std::size_t>(int_param(p, "rows", 3, 1, 7));
  const auto cols = static_cast<std::size_t>(int_param(p, "cols", 3, 1, 7));
  if (rows * cols < 2) throw InputError("grid needs at least two cells");
  const auto n = static_cast<std::size_t>(int_param(p, "players", 3, 1, 64));
  const std::int64_t max_cost = int_param(p, "max_cost", 10, 1, 1'000'000);
  Graph g;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) g.add_vertex("g" + std::to_string(r) + "_" + std::to_string(c));
  }
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1), Rational(draw.between(1, max_cost)));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c), Rational(draw.between(1, max_cost)));
    }
  }
  auto players = random_players(draw, n, 0, rows * cols);
  return GameInstance(std::move(g), std::move(players), VertexId{0});
}

GameInstance shared_path(const Params& p, Draw& draw) {
  require_known(p, {"length", "players", "max_cost"});
  const auto length = static_cast<std::size_t>(int_param(p, "length", 4, 1, 40));
  const auto n = static_cast<std::size_t>(int_param(p, "players", 3, 1, 64));
  const std::int64_t max_cost = int_param(p, "max_cost", 10, 1, 1'000'000);
  Graph g;
  for (std::size_t i = 0; i < length; ++i) g.add_vertex("p" + std::to_string(i));
  const VertexId t = g.add_vertex("t");
  for (VertexId i = 0; i < length; ++i) g.add_edge(i, i + 1, Rational(draw.between(1, max_cost)));
  std::vector<Player> players;
  std::vector<char> bypassed(length, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<VertexId>(draw.between(0, static_cast<std::int64_t>(length) - 1));
    players.push_back({s, t});
    bypassed[s] = 1;
  }
  for (VertexId s = 0; s < length; ++s) {
    if (bypassed[s]) {
      g.add_edge(s, t, Rational(draw.between(1, max_cost * static_cast<std::int64_t>(length - s))));
    }
  }
  return GameInstance(std::move(g), std::move(players), t);
}

}  // namespace

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"fan", "random-connected", "grid", "shared-path"};
  return k;
}

GameInstance generate(std::string_view kind, const Params& params, std::uint64_t seed) {
  Draw draw(seed);
  try {
    if (kind == "fan") return fan(params, draw);
    if (kind == "random-connected") return random_connected(params, draw);
    if (kind == "grid") return grid(params, draw);
    if (kind == "shared-path") return shared_path(params, draw);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown generator kind '" + std::string(kind) + "'");
}

}  // namespace shapley::gen
