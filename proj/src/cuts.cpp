#include "flowlap/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace flowlap {

namespace {

void check_labels(const DualGraph& dual, std::span<const int> labels, int k) {
  if (k < 1) throw std::invalid_argument("cluster count must be at least 1");
  if (static_cast<Index>(labels.size()) != dual.num_vertices()) {
    std::ostringstream msg;
    msg << "label vector has " << labels.size() << " entries, dual graph has " << dual.num_vertices() << " vertices";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t p = 0; p < labels.size(); ++p)
    if (labels[p] < 0 || labels[p] >= k) {
      std::ostringstream msg;
      msg << "label " << labels[p] << " of edge " << p << " is outside [0, " << k << ")";
      throw std::invalid_argument(msg.str());
    }
}

void accumulate(Links& links, double w) {
  links.abs += std::abs(w);
  if (w > 0.0) links.positive += w;
  if (w < 0.0) links.negative -= w;
}

// Unchecked single pass over the stored (symmetric) dual weights.
CutReport tally(const DualGraph& dual, std::span<const int> labels, int k) {
  CutReport r;
  r.clusters.resize(static_cast<std::size_t>(k));
  for (int label : labels) ++r.clusters[static_cast<std::size_t>(label)].size;
  const SparseMatrix& w = dual.weights;
  for (Index col = 0; col < w.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(w, col); it; ++it) {
      if (it.row() == it.col()) continue;
      const int a = labels[static_cast<std::size_t>(it.row())];
      const int b = labels[static_cast<std::size_t>(it.col())];
      ClusterCut& c = r.clusters[static_cast<std::size_t>(a)];
      accumulate(a == b ? c.inside : c.outward, it.value());
    }
  for (const ClusterCut& c : r.clusters) r.total_cut += c.outward.abs;
  return r;
}

double ucost(const ClusterCut& c, Affinity kind) {
  switch (kind) {
    case Affinity::PRE: return c.outward.abs + 2.0 * c.inside.negative;
    case Affinity::DPE: return c.outward.abs + 2.0 * c.inside.positive;
    case Affinity::RGE: return c.outward.abs;
  }
  return 0.0;
}

}  // namespace

Links links_between(const DualGraph& dual, std::span<const int> labels, int a, int b) {
  if (static_cast<Index>(labels.size()) != dual.num_vertices())
    throw std::invalid_argument("label vector has wrong length");
  Links links;
  const SparseMatrix& w = dual.weights;
  for (Index col = 0; col < w.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(w, col); it; ++it)
      if (labels[static_cast<std::size_t>(it.row())] == a && labels[static_cast<std::size_t>(it.col())] == b)
        accumulate(links, it.value());
  return links;
}

CutReport cut_quantities(const DualGraph& dual, std::span<const int> labels, int k) {
  check_labels(dual, labels, k);
  return tally(dual, labels, k);
}

std::vector<double> unscaled_cost(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind) {
  const CutReport r = cut_quantities(dual, labels, k);
  std::vector<double> out;
  out.reserve(r.clusters.size());
  for (const ClusterCut& c : r.clusters) out.push_back(ucost(c, kind));
  return out;
}

CutReport cluster_report(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind,
                         const EdgeVolumes& vols) {
  check_labels(dual, labels, k);
  if (vols.f.size() != dual.num_vertices()) throw std::invalid_argument("volume vector has wrong length");
  CutReport r = tally(dual, labels, k);
  for (std::size_t p = 0; p < labels.size(); ++p)
    r.clusters[static_cast<std::size_t>(labels[p])].volume += vols.f[static_cast<Index>(p)];
  for (ClusterCut& c : r.clusters) {
    c.unscaled_cost = ucost(c, kind);
    c.normalized_cost = c.size > 0 ? c.unscaled_cost / c.volume : 0.0;
    r.total_unscaled_cost += c.unscaled_cost;
    r.total_normalized_cost += c.normalized_cost;
  }
  return r;
}

NormalizedCost normalized_cost(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind,
                               const EdgeVolumes& vols) {
  const CutReport r = cluster_report(dual, labels, k, kind, vols);
  NormalizedCost out;
  for (std::size_t c = 0; c < r.clusters.size(); ++c) {
    if (r.clusters[c].size == 0) {
      std::ostringstream msg;
      msg << "cluster " << c << " is empty; its normalized cost is undefined";
      throw std::invalid_argument(msg.str());
    }
    out.per_cluster.push_back(r.clusters[c].normalized_cost);
  }
  out.total = r.total_normalized_cost;
  return out;
}

BruteForceResult brute_force_min(const Digraph& g, Affinity kind, int k, const BruteForceOptions& options) {
  const Index m = g.num_edges();
  if (m > kBruteForceMaxEdges) {
    std::ostringstream msg;
    msg << "brute force is limited to " << kBruteForceMaxEdges << " edges, graph has " << m;
    throw std::invalid_argument(msg.str());
  }
  if (k < 1 || k > m) throw std::invalid_argument("cluster count must be in [1, M]");

  const VertexVector nu = options.nu ? *options.nu : default_nu(g);
  const DualGraph dual =
      options.phi ? (validate_phi(g, *options.phi), dual_graph_from_phi(g, *options.phi))
                  : build_dual_graph(build_edge_laplacian(g, nu));
  const EdgeVolumes vols = edge_volumes(g, nu);

  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<int> labels(static_cast<std::size_t>(m), 0);

  auto evaluate = [&] {
    ++best.partitions_checked;
    const CutReport r = cluster_report(dual, labels, k, kind, vols);
    const double cost = options.normalized ? r.total_normalized_cost : r.total_unscaled_cost;
    // Strictly better beyond round-off: equal-cost partitions reached later
    // are lexicographically larger and must not replace the incumbent.
    if (best.labels.empty() || cost < best.cost - 1e-12 * std::max(1.0, std::abs(best.cost))) {
      best.cost = cost;
      best.labels = labels;
    }
  };

  // Restricted growth strings with exactly k blocks, in lexicographic order.
  auto recurse = [&](auto&& self, Index pos, int used) -> void {
    if (pos == m) {
      if (used == k) evaluate();
      return;
    }
    const Index remaining = m - pos;
    for (int label = 0; label <= std::min(used, k - 1); ++label) {
      const int now_used = std::max(used, label + 1);
      if (k - now_used > remaining - 1) continue;
      labels[static_cast<std::size_t>(pos)] = label;
      self(self, pos + 1, now_used);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

}  // namespace flowlap
