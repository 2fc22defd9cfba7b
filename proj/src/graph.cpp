#include "flowlap/graph.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flowlap {

namespace {

void check_edge(const Edge& e, Index p, Index num_vertices) {
  if (e.source < 0 || e.source >= num_vertices || e.target < 0 || e.target >= num_vertices) {
    std::ostringstream msg;
    msg << "edge " << p << " (" << e.source << " -> " << e.target << ") has a vertex index outside [0, "
        << num_vertices << ")";
    throw std::invalid_argument(msg.str());
  }
  if (!std::isfinite(e.weight)) {
    std::ostringstream msg;
    msg << "edge " << p << " has a non-finite weight";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Digraph::Digraph(Index num_vertices, std::vector<Edge> edges, std::vector<std::string> warnings)
    : num_vertices_(num_vertices), edges_(std::move(edges)), warnings_(std::move(warnings)) {
  if (num_vertices_ < 0) throw std::invalid_argument("negative vertex count");
  for (Index p = 0; p < num_edges(); ++p) {
    const Edge& e = edge(p);
    check_edge(e, p, num_vertices_);
    if (!(e.weight > 0.0)) {
      std::ostringstream msg;
      msg << "edge " << p << " has non-positive weight " << e.weight;
      throw std::invalid_argument(msg.str());
    }
  }
}

Eigen::VectorXd Digraph::weights() const {
  Eigen::VectorXd w(num_edges());
  for (Index p = 0; p < num_edges(); ++p) w[p] = edge(p).weight;
  return w;
}

Digraph Digraph::with_weight(Index p, double weight) const {
  if (p < 0 || p >= num_edges()) throw std::out_of_range("edge index out of range");
  std::vector<Edge> copy = edges_;
  copy[static_cast<std::size_t>(p)].weight = weight;
  return Digraph(num_vertices_, std::move(copy), warnings_);
}

Digraph build_digraph(std::span<const Edge> edge_list, Index num_vertices, Directedness directedness) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  std::vector<Edge> edges;
  edges.reserve(edge_list.size() * (directedness == Directedness::Undirected ? 2 : 1));
  Index signed_count = 0;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    Edge e = edge_list[i];
    check_edge(e, static_cast<Index>(i), num_vertices);
    if (e.weight == 0.0) {
      std::ostringstream msg;
      msg << "edge " << i << " has zero weight (its edge volume would be zero)";
      throw std::invalid_argument(msg.str());
    }
    if (e.weight < 0.0) {
      ++signed_count;
      e.weight = -e.weight;
    }
    edges.push_back(e);
    if (directedness == Directedness::Undirected) edges.push_back({e.target, e.source, e.weight});
  }

  std::vector<std::string> warnings;
  if (signed_count > 0) {
    std::ostringstream msg;
    msg << signed_count << " edge(s) had negative weights; absolute values are used";
    warnings.push_back(msg.str());
  }
  return Digraph(num_vertices, std::move(edges), std::move(warnings));
}

VertexStats vertex_stats(const Digraph& g) {
  const Index n = g.num_vertices();
  VertexStats s;
  s.social_participation.assign(static_cast<std::size_t>(n), 0);
  s.out_count.assign(static_cast<std::size_t>(n), 0);
  s.in_count.assign(static_cast<std::size_t>(n), 0);
  s.out_abs = Eigen::VectorXd::Zero(n);
  s.in_abs = Eigen::VectorXd::Zero(n);
  s.out = Eigen::VectorXd::Zero(n);
  s.in = Eigen::VectorXd::Zero(n);
  for (const Edge& e : g.edges()) {
    const auto src = static_cast<std::size_t>(e.source);
    const auto dst = static_cast<std::size_t>(e.target);
    ++s.social_participation[src];
    ++s.social_participation[dst];
    ++s.out_count[src];
    ++s.in_count[dst];
    s.out_abs[e.source] += std::abs(e.weight);
    s.in_abs[e.target] += std::abs(e.weight);
    s.out[e.source] += e.weight;
    s.in[e.target] += e.weight;
  }
  s.total_abs = s.out_abs + s.in_abs;
  s.net = s.out - s.in;
  return s;
}

Eigen::VectorXd net_degrees(const Digraph& g, const Eigen::VectorXd& w) {
  if (w.size() != g.num_edges()) throw std::invalid_argument("edge weight vector has wrong length");
  Eigen::VectorXd net = Eigen::VectorXd::Zero(g.num_vertices());
  for (Index p = 0; p < g.num_edges(); ++p) {
    net[g.edge(p).source] += w[p];
    net[g.edge(p).target] -= w[p];
  }
  return net;
}

VertexVector default_nu(const Digraph& g) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += std::abs(e.weight);
  if (g.num_edges() == 0 || !(total > 0.0))
    throw std::invalid_argument("default vertex vector needs at least one weighted edge");
  const VertexStats s = vertex_stats(g);
  return {s.total_abs / total, VertexVector::Source::WeightedDegree};
}

void require_positive_at_endpoints(const Digraph& g, const VertexVector& nu) {
  if (nu.values.size() != g.num_vertices()) {
    std::ostringstream msg;
    msg << "vertex vector has " << nu.values.size() << " entries, graph has " << g.num_vertices()
        << " vertices";
    throw std::invalid_argument(msg.str());
  }
  for (const Edge& e : g.edges()) {
    for (Index v : {e.source, e.target}) {
      if (!(nu.values[v] > 0.0)) {
        std::ostringstream msg;
        msg << "vertex vector must be positive at edge endpoints; nu[" << v << "] = " << nu.values[v];
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

IncidenceMatrix incidence(const Digraph& g) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(2 * g.num_edges()));
  for (Index p = 0; p < g.num_edges(); ++p) {
    const Edge& e = g.edge(p);
    if (e.is_self_edge()) continue;
    entries.emplace_back(e.source, p, 1.0);
    entries.emplace_back(e.target, p, -1.0);
  }
  SparseMatrix b(g.num_vertices(), g.num_edges());
  b.setFromTriplets(entries.begin(), entries.end());
  return {std::move(b)};
}

Components weak_components(const Digraph& g) {
  std::vector<Index> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      auto& pv = parent[static_cast<std::size_t>(v)];
      pv = parent[static_cast<std::size_t>(pv)];
      v = pv;
    }
    return v;
  };
  for (const Edge& e : g.edges()) {
    Index a = find(e.source), b = find(e.target);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  Components c;
  c.of_vertex.assign(parent.size(), -1);
  std::vector<Index> id_of_root(parent.size(), -1);
  for (Index v = 0; v < g.num_vertices(); ++v) {
    Index r = find(v);
    auto& id = id_of_root[static_cast<std::size_t>(r)];
    if (id < 0) id = c.count++;
    c.of_vertex[static_cast<std::size_t>(v)] = id;
  }
  return c;
}

}  // namespace flowlap
