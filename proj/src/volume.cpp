#include "flowlap/volume.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flowlap {

double EdgeVolumes::cluster_volume(std::span<const int> labels, int cluster) const {
  if (static_cast<Index>(labels.size()) != f.size()) throw std::invalid_argument("label vector has wrong length");
  double total = 0.0;
  for (std::size_t p = 0; p < labels.size(); ++p)
    if (labels[p] == cluster) total += f[static_cast<Index>(p)];
  return total;
}

EdgeVolumes edge_volumes(const Digraph& g, const VertexVector& nu) {
  require_positive_at_endpoints(g, nu);
  const VertexStats s = vertex_stats(g);
  Eigen::VectorXd f(g.num_edges());
  for (Index p = 0; p < g.num_edges(); ++p) {
    const Edge& e = g.edge(p);
    const double out = s.out_abs[e.source];
    const double in = s.in_abs[e.target];
    // e_p itself contributes to both sums, so these are positive for valid graphs.
    if (!(out > 0.0) || !(in > 0.0)) throw std::logic_error("edge endpoint with zero absolute degree");
    const auto sigma_src = static_cast<double>(s.social_participation[static_cast<std::size_t>(e.source)]);
    const auto sigma_dst = static_cast<double>(s.social_participation[static_cast<std::size_t>(e.target)]);
    f[p] = 0.5 * std::abs(e.weight) * (sigma_src * nu.values[e.source] / out + sigma_dst * nu.values[e.target] / in);
  }
  return {std::move(f)};
}

NormalizedLaplacian normalize_laplacian(const FlowLaplacian& l, const EdgeVolumes& vols, bool normalize) {
  if (!normalize) return {l.values, l.kind, false};
  if (vols.f.size() != l.values.rows()) throw std::invalid_argument("volume vector has wrong length");
  Eigen::VectorXd scale(vols.f.size());
  for (Index p = 0; p < vols.f.size(); ++p) {
    if (!(vols.f[p] > 0.0)) {
      std::ostringstream msg;
      msg << "edge " << p << " has non-positive volume " << vols.f[p];
      throw std::invalid_argument(msg.str());
    }
    scale[p] = 1.0 / std::sqrt(vols.f[p]);
  }
  SparseMatrix out = l.values;
  for (Index col = 0; col < out.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(out, col); it; ++it) it.valueRef() *= scale[it.row()] * scale[it.col()];
  return {std::move(out), l.kind, true};
}

bool VolumeProbe::holds() const {
  if (!applicable()) return true;
  return expect == Expect::Increase ? after > before : after < before;
}

namespace {

VolumeProbe probe(const Digraph& g, Index target, std::optional<Index> perturbed, double relative_delta,
                  VolumeProbe::Expect expect) {
  VolumeProbe r;
  r.expect = expect;
  r.perturbed_edge = perturbed;
  r.before = edge_volumes(g, default_nu(g)).f[target];
  if (!perturbed) {
    r.after = r.before;
    return r;
  }
  const Digraph bumped = g.with_weight(*perturbed, g.edge(*perturbed).weight * (1.0 + relative_delta));
  r.after = edge_volumes(bumped, default_nu(bumped)).f[target];
  return r;
}

}  // namespace

VolumeProbeReport volume_monotonicity_probe(const Digraph& g, Index edge, double relative_delta) {
  if (edge < 0 || edge >= g.num_edges()) throw std::out_of_range("edge index out of range");
  if (!(relative_delta > 0.0) || !std::isfinite(relative_delta))
    throw std::invalid_argument("perturbation must be a positive finite relative increase");

  const Edge& e = g.edge(edge);
  std::optional<Index> competing, feeding;
  for (Index q = 0; q < g.num_edges(); ++q) {
    if (q == edge) continue;
    const Edge& o = g.edge(q);
    if (!competing && !o.is_self_edge() && (o.source == e.source || o.target == e.target)) competing = q;
    if (!feeding && !e.is_self_edge() && o.source == e.target && o.target == e.source) feeding = q;
  }

  VolumeProbeReport report;
  report.edge = edge;
  report.relative_delta = relative_delta;
  report.own_weight = probe(g, edge, edge, relative_delta, VolumeProbe::Expect::Increase);
  report.competing_edge = probe(g, edge, competing, relative_delta, VolumeProbe::Expect::Decrease);
  report.feeding_edge = probe(g, edge, feeding, relative_delta, VolumeProbe::Expect::Increase);
  return report;
}

}  // namespace flowlap
