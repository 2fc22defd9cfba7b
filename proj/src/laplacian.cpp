#include "flowlap/laplacian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flowlap {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix diagonal(const Eigen::VectorXd& d) {
  SparseMatrix m(d.size(), d.size());
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix without_diagonal(const SparseMatrix& m) {
  SparseMatrix out = m;
  out.prune([](Index row, Index col, double) { return row != col; });
  return out;
}

Eigen::VectorXd abs_row_sums(const SparseMatrix& m) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(m.rows());
  for (Index col = 0; col < m.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) d[it.row()] += std::abs(it.value());
  return d;
}

// Edges touching each vertex, self-edges excluded.
std::vector<std::vector<Index>> incident_edges(const Digraph& g) {
  std::vector<std::vector<Index>> at(static_cast<std::size_t>(g.num_vertices()));
  for (Index p = 0; p < g.num_edges(); ++p) {
    const Edge& e = g.edge(p);
    if (e.is_self_edge()) continue;
    at[static_cast<std::size_t>(e.source)].push_back(p);
    at[static_cast<std::size_t>(e.target)].push_back(p);
  }
  return at;
}

bool share_vertex(const Edge& a, const Edge& b) {
  return a.source == b.source || a.source == b.target || a.target == b.source || a.target == b.target;
}

FlowLaplacian from_psi_phi(const PsiMatrix& psi, const PhiMatrix& phi, ConstructionPath path) {
  const SparseMatrix weighted = psi.values.cwiseProduct(phi.values);
  const SparseMatrix psi_sq = psi.values.cwiseProduct(psi.values);
  SparseMatrix halved = phi.values + phi.values.cwiseProduct(psi_sq);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(phi.values.rows());
  for (Index col = 0; col < halved.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(halved, col); it; ++it) d[it.row()] += 0.5 * it.value();
  SparseMatrix l = diagonal(d) - weighted;
  l.makeCompressed();
  return {std::move(l), psi.kind, path};
}

}  // namespace

std::string to_string(Affinity kind) {
  switch (kind) {
    case Affinity::PRE: return "pre";
    case Affinity::DPE: return "dpe";
    case Affinity::RGE: return "rge";
  }
  return "?";
}

Affinity parse_affinity(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "pre") return Affinity::PRE;
  if (lower == "dpe") return Affinity::DPE;
  if (lower == "rge") return Affinity::RGE;
  throw std::invalid_argument("unknown affinity '" + std::string(name) + "' (expected pre, dpe or rge)");
}

Index DualGraph::num_edges() const {
  Index count = 0;
  for (Index col = 0; col < weights.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(weights, col); it; ++it)
      if (it.row() < it.col() && it.value() != 0.0) ++count;
  return count;
}

PsiMatrix build_psi(const Digraph& g, Affinity kind) {
  const SparseMatrix b = incidence(g).values;
  SparseMatrix gram = SparseMatrix(b.transpose()) * b;
  std::vector<Triplet> t;
  for (Index col = 0; col < gram.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(gram, col); it; ++it) {
      if (it.row() == it.col() || it.value() == 0.0) continue;
      double s = it.value() > 0.0 ? 1.0 : -1.0;
      if (kind == Affinity::DPE) s = -s;
      if (kind == Affinity::RGE) s = 1.0;
      t.emplace_back(it.row(), it.col(), s);
    }
  const double diag = kind == Affinity::DPE ? -1.0 : 1.0;
  for (Index p = 0; p < g.num_edges(); ++p) t.emplace_back(p, p, diag);
  SparseMatrix psi(g.num_edges(), g.num_edges());
  psi.setFromTriplets(t.begin(), t.end());
  return {kind, std::move(psi)};
}

PhiMatrix build_phi(const Digraph& g, const VertexVector& nu) {
  if (nu.values.size() != g.num_vertices()) throw std::invalid_argument("vertex vector has wrong length");
  if ((nu.values.array() < 0.0).any()) throw std::invalid_argument("Phi(nu) requires nu >= 0");
  std::vector<Triplet> t;
  const auto at = incident_edges(g);
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const auto& edges = at[static_cast<std::size_t>(v)];
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        // A multi-edge or loop pair shows up at both endpoints and collects both nu values.
        t.emplace_back(edges[a], edges[b], nu.values[v]);
        t.emplace_back(edges[b], edges[a], nu.values[v]);
      }
  }
  SparseMatrix phi(g.num_edges(), g.num_edges());
  phi.setFromTriplets(t.begin(), t.end());
  return {std::move(phi)};
}

void validate_phi(const Digraph& g, const PhiMatrix& phi) {
  const Index m = g.num_edges();
  if (phi.values.rows() != m || phi.values.cols() != m) {
    std::ostringstream msg;
    msg << "Phi must be " << m << " x " << m << ", got " << phi.values.rows() << " x " << phi.values.cols();
    throw std::invalid_argument(msg.str());
  }
  const SparseMatrix transposed = phi.values.transpose();
  if (!(SparseMatrix(phi.values - transposed).norm() == 0.0)) throw std::invalid_argument("Phi is not symmetric");
  for (Index col = 0; col < phi.values.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(phi.values, col); it; ++it) {
      if (it.value() == 0.0) continue;
      if (it.value() < 0.0 || !std::isfinite(it.value())) throw std::invalid_argument("Phi has a negative or non-finite entry");
      if (it.row() == it.col()) throw std::invalid_argument("Phi has a nonzero diagonal entry");
      if (!share_vertex(g.edge(it.row()), g.edge(it.col()))) {
        std::ostringstream msg;
        msg << "Phi(" << it.row() << ", " << it.col() << ") is nonzero but the edges share no vertex";
        throw std::invalid_argument(msg.str());
      }
    }
}

EdgeLaplacian build_edge_laplacian(const Digraph& g, const VertexVector& nu) {
  if (nu.values.size() != g.num_vertices()) throw std::invalid_argument("vertex vector has wrong length");
  const SparseMatrix b = incidence(g).values;
  const SparseMatrix scaled = diagonal(nu.values) * b;
  SparseMatrix le = SparseMatrix(b.transpose()) * scaled;
  le.makeCompressed();
  return {std::move(le), nu.values};
}

Eigen::VectorXd edge_differential(const EdgeLaplacian& le, const Eigen::VectorXd& w) {
  if (w.size() != le.values.cols()) {
    std::ostringstream msg;
    msg << "edge weight vector has " << w.size() << " entries, expected " << le.values.cols();
    throw std::invalid_argument(msg.str());
  }
  return le.values * w;
}

DualGraph build_dual_graph(const EdgeLaplacian& le) {
  SparseMatrix w = without_diagonal(le.values);
  w.prune([](Index, Index, double v) { return v != 0.0; });
  w.makeCompressed();
  Eigen::VectorXd d = abs_row_sums(w);
  return {std::move(w), std::move(d)};
}

DualGraph dual_graph_from_phi(const Digraph& g, const PhiMatrix& phi) {
  SparseMatrix w = build_psi(g, Affinity::PRE).values.cwiseProduct(phi.values);
  w.prune([](Index row, Index col, double v) { return row != col && v != 0.0; });
  w.makeCompressed();
  Eigen::VectorXd d = abs_row_sums(w);
  return {std::move(w), std::move(d)};
}

FlowLaplacian build_flow_laplacian(const Digraph& g, const VertexVector& nu, Affinity kind, ConstructionPath path) {
  if (path == ConstructionPath::PsiPhi) return from_psi_phi(build_psi(g, kind), build_phi(g, nu), path);

  require_positive_at_endpoints(g, nu);
  const DualGraph dual = build_dual_graph(build_edge_laplacian(g, nu));
  const SparseMatrix d = diagonal(dual.abs_degree);
  SparseMatrix l;
  switch (kind) {
    case Affinity::PRE: l = d - dual.weights; break;
    case Affinity::DPE: l = d + dual.weights; break;
    case Affinity::RGE: l = d - SparseMatrix(dual.weights.cwiseAbs()); break;
  }
  l.makeCompressed();
  return {std::move(l), kind, path};
}

FlowLaplacian build_flow_laplacian_general(const Digraph& g, const PhiMatrix& phi, Affinity kind) {
  validate_phi(g, phi);
  return from_psi_phi(build_psi(g, kind), phi, ConstructionPath::PsiPhi);
}

}  // namespace flowlap
