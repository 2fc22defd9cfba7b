#include "flowlap/generators.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace flowlap {

namespace {

struct ParsedSpec {
  std::string name;
  std::vector<long long> args;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

ParsedSpec parse_spec(std::string_view spec) {
  ParsedSpec out;
  const auto open = spec.find('(');
  out.name = trim(spec.substr(0, open));
  if (open == std::string_view::npos) return out;
  const auto close = spec.rfind(')');
  if (close == std::string_view::npos || close < open || !trim(spec.substr(close + 1)).empty())
    throw std::invalid_argument("malformed generator spec '" + std::string(spec) + "'");
  std::string_view body = spec.substr(open + 1, close - open - 1);
  if (trim(body).empty()) return out;
  while (true) {
    const auto comma = body.find(',');
    const std::string token = trim(body.substr(0, comma));
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
      throw std::invalid_argument("generator argument '" + token + "' is not an integer");
    out.args.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

long long arg(const ParsedSpec& s, std::size_t i, long long fallback, long long min_value) {
  const long long v = i < s.args.size() ? s.args[i] : fallback;
  if (v < min_value) {
    std::ostringstream msg;
    msg << s.name << ": argument " << i + 1 << " must be at least " << min_value;
    throw std::invalid_argument(msg.str());
  }
  return v;
}

void check_arity(const ParsedSpec& s, std::size_t max_args) {
  if (s.args.size() > max_args) {
    std::ostringstream msg;
    msg << s.name << " takes at most " << max_args << " arguments";
    throw std::invalid_argument(msg.str());
  }
}

Digraph from_pairs(Index n, const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [s, t] : pairs) edges.push_back({s, t, 1.0});
  return Digraph(n, std::move(edges));
}

Digraph lai7() {
  return from_pairs(7, {{0, 1}, {0, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 4}, {4, 5}, {4, 6}, {6, 5}});
}

Digraph triangles(Index c) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < c; ++i) {
    const Index b = 3 * i;
    pairs.insert(pairs.end(), {{b, b + 1}, {b + 1, b + 2}, {b + 2, b}});
  }
  return from_pairs(3 * c, pairs);
}

Digraph inout_star(Index in, Index out) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 1; i <= in; ++i) pairs.emplace_back(i, 0);
  for (Index j = 1; j <= out; ++j) pairs.emplace_back(0, in + j);
  return from_pairs(1 + in + out, pairs);
}

Digraph path(Index n) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i) pairs.emplace_back(i, i + 1);
  return from_pairs(n + 1, pairs);
}

// Top rail t0..t3 = 0..3, bottom rail b0..b3 = 4..7, antennae 8 and 9.
Digraph cockroach() {
  return from_pairs(10, {{0, 1}, {1, 2}, {2, 3}, {7, 6}, {6, 5}, {5, 4},
                         {0, 4}, {4, 0}, {1, 5}, {5, 1}, {2, 6}, {6, 2}, {3, 7}, {7, 3},
                         {8, 0}, {4, 9},
                         {3, 2}, {1, 0}, {4, 5}, {6, 7}, {0, 8}});
}

Digraph cockroach(Index r, Index a) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i + 1 < r; ++i) pairs.emplace_back(i, i + 1);
  for (Index i = r - 1; i > 0; --i) pairs.emplace_back(r + i, r + i - 1);
  for (Index i = 0; i < r; ++i) {
    pairs.emplace_back(i, r + i);
    pairs.emplace_back(r + i, i);
  }
  for (Index j = 0; j < a; ++j) pairs.emplace_back(2 * r + j, 0);
  for (Index j = 0; j < a; ++j) pairs.emplace_back(r, 2 * r + a + j);
  return from_pairs(2 * r + 2 * a, pairs);
}

Digraph bottleneck(Index s) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index c = 0; c < 2; ++c)
    for (Index i = 0; i < s; ++i) {
      const Index u = c * s + i;
      const Index v = c * s + (i + 1) % s;
      pairs.emplace_back(u, v);
      pairs.emplace_back(v, u);
    }
  pairs.emplace_back(0, s);
  pairs.emplace_back(s, 0);
  return from_pairs(2 * s, pairs);
}

Digraph star_chain(Index c, Index leaves) {
  std::vector<std::pair<Index, Index>> pairs;
  Index next = c;
  for (Index i = 0; i < c; ++i) {
    if (i + 1 < c) pairs.emplace_back(i, i + 1);
    for (Index l = 0; l < leaves; ++l) pairs.emplace_back(i, next++);
  }
  return from_pairs(next, pairs);
}

}  // namespace

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Index uniform_index(std::mt19937_64& rng, Index n) {
  return std::min<Index>(n - 1, static_cast<Index>(uniform01(rng) * static_cast<double>(n)));
}

Digraph random_digraph(const RandomGraphOptions& o, std::mt19937_64& rng) {
  const Index n = o.vertices;
  if (n < 1) throw std::invalid_argument("random digraph needs at least one vertex");
  if (!o.self_edges && n < 2 && o.edges > 0) throw std::invalid_argument("need two vertices without self-edges");
  if (o.connected && o.edges < n - 1) throw std::invalid_argument("too few edges for a connected digraph");
  if (!o.multi_edges) {
    const Index slots = o.reciprocal_pairs ? n * (n - 1) : n * (n - 1) / 2;
    if (o.edges > slots + (o.self_edges ? n : 0))
      throw std::invalid_argument("too many edges for a digraph without multi-edges");
  }

  std::set<std::pair<Index, Index>> used;
  std::vector<Edge> edges;
  auto weight = [&] { return o.binary ? 1.0 : o.max_weight * (1.0 - uniform01(rng)); };
  auto admissible = [&](Index s, Index t) {
    if (s == t && !o.self_edges) return false;
    if (!o.multi_edges && used.count({s, t})) return false;
    if (!o.reciprocal_pairs && s != t && used.count({t, s})) return false;
    return true;
  };
  auto add = [&](Index s, Index t) {
    used.insert({s, t});
    edges.push_back({s, t, weight()});
  };

  if (o.connected)
    for (Index v = 1; v < n; ++v) {
      const Index u = uniform_index(rng, v);
      if (uniform01(rng) < 0.5) add(u, v); else add(v, u);
    }
  while (static_cast<Index>(edges.size()) < o.edges) {
    const Index s = uniform_index(rng, n);
    const Index t = uniform_index(rng, n);
    if (admissible(s, t)) add(s, t);
  }
  return Digraph(n, std::move(edges));
}

Digraph disjoint_union(std::span<const Digraph> parts) {
  std::vector<Edge> edges;
  std::vector<std::string> warnings;
  Index offset = 0;
  for (const Digraph& g : parts) {
    for (const Edge& e : g.edges()) edges.push_back({e.source + offset, e.target + offset, e.weight});
    warnings.insert(warnings.end(), g.warnings().begin(), g.warnings().end());
    offset += g.num_vertices();
  }
  return Digraph(offset, std::move(edges), std::move(warnings));
}

std::vector<std::string> synthetic_names() {
  return {"lai7",      "two-triangles", "triangles",  "inout-star", "path",      "cockroach",
          "bottleneck", "star-chain",   "random",     "components"};
}

Digraph generate_synthetic(std::string_view spec) {
  const ParsedSpec s = parse_spec(spec);
  if (s.name == "lai7") return check_arity(s, 0), lai7();
  if (s.name == "two-triangles") return check_arity(s, 0), triangles(2);
  if (s.name == "triangles") return check_arity(s, 1), triangles(arg(s, 0, 2, 1));
  if (s.name == "inout-star") return check_arity(s, 2), inout_star(arg(s, 0, 2, 0), arg(s, 1, 2, 0));
  if (s.name == "path") return check_arity(s, 1), path(arg(s, 0, 2, 1));
  if (s.name == "cockroach") {
    check_arity(s, 2);
    if (s.args.empty()) return cockroach();
    return cockroach(arg(s, 0, 4, 1), arg(s, 1, 1, 0));
  }
  if (s.name == "bottleneck") return check_arity(s, 1), bottleneck(arg(s, 0, 4, 3));
  if (s.name == "star-chain") return check_arity(s, 2), star_chain(arg(s, 0, 2, 1), arg(s, 1, 3, 0));
  if (s.name == "random") {
    check_arity(s, 3);
    RandomGraphOptions o;
    o.vertices = arg(s, 0, 20, 2);
    o.edges = arg(s, 1, 40, 1);
    std::mt19937_64 rng(static_cast<std::uint64_t>(arg(s, 2, 0, 0)));
    return random_digraph(o, rng);
  }
  if (s.name == "components") {
    check_arity(s, 4);
    const Index c = arg(s, 0, 2, 1);
    RandomGraphOptions o;
    o.vertices = arg(s, 1, 6, 2);
    o.edges = arg(s, 2, 8, 1);
    o.connected = true;
    std::mt19937_64 rng(static_cast<std::uint64_t>(arg(s, 3, 0, 0)));
    std::vector<Digraph> parts;
    for (Index i = 0; i < c; ++i) parts.push_back(random_digraph(o, rng));
    return disjoint_union(parts);
  }
  throw std::invalid_argument("unknown generator '" + s.name + "'");
}

}  // namespace flowlap
