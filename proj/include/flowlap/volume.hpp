#pragma once

#include <optional>
#include <span>

#include "flowlap/laplacian.hpp"

namespace flowlap {

struct EdgeVolumes {
  Eigen::VectorXd f;

  /// Sum of f_p over the edges labelled `cluster`.
  double cluster_volume(std::span<const int> labels, int cluster) const;
};

/// f_p = |w_p|/2 (sigma_l nu_l / <d_out,l> + sigma_k nu_k / <d_in,k>)
/// for e_p = (l -> k). A self-edge uses the same vertex in both terms.
/// Requires nu > 0 at every edge endpoint.
EdgeVolumes edge_volumes(const Digraph& g, const VertexVector& nu);

struct NormalizedLaplacian {
  SparseMatrix values;
  Affinity kind = Affinity::PRE;
  bool normalized = true;
};

/// F^-1/2 L F^-1/2, or L unchanged when `normalize` is false.
NormalizedLaplacian normalize_laplacian(const FlowLaplacian& l, const EdgeVolumes& vols, bool normalize = true);

/// Effect on f_p of raising one edge weight, everything else recomputed
/// (including the default nu).
struct VolumeProbe {
  enum class Expect { Increase, Decrease };

  std::optional<Index> perturbed_edge;  // empty when the graph has no such edge
  double before = 0.0;
  double after = 0.0;
  Expect expect = Expect::Increase;

  bool applicable() const { return perturbed_edge.has_value(); }
  bool holds() const;
};

struct VolumeProbeReport {
  Index edge = 0;
  double relative_delta = 0.0;
  VolumeProbe own_weight;      // |w_p| itself (expect increase)
  VolumeProbe competing_edge;  // another out-edge of l_p or in-edge of k_p (expect decrease)
  VolumeProbe feeding_edge;    // an edge k_p -> l_p raising <d_in,l> and <d_out,k> (expect increase)
};

/// Scales the chosen weights by (1 + relative_delta) in default-nu mode.
/// Self-edges are never used as the competing edge. Throws on a
/// non-positive delta or an out-of-range edge.
VolumeProbeReport volume_monotonicity_probe(const Digraph& g, Index edge, double relative_delta);

}  // namespace flowlap
