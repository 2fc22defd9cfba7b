#include "flowlap/spectral.hpp"

#include <sstream>
#include <stdexcept>

namespace flowlap {

FeatureMatrix row_normalize(const Eigen::MatrixXd& y) {
  FeatureMatrix out{y, std::vector<bool>(static_cast<std::size_t>(y.rows()), false)};
  for (Index i = 0; i < y.rows(); ++i) {
    const double norm = y.row(i).norm();
    if (norm > 0.0) {
      out.rows.row(i) /= norm;
    } else {
      out.zero_row[static_cast<std::size_t>(i)] = true;
    }
  }
  return out;
}

FeatureMatrix row_normalize(const EigenBasis& basis) { return row_normalize(basis.vectors); }

ClusteringResult cluster_edges(const Digraph& g, Affinity kind, int k, const ClusterOptions& options) {
  const Index m = g.num_edges();
  if (k < 1 || k > m) {
    std::ostringstream msg;
    msg << "cluster count " << k << " is outside [1, " << m << "]";
    throw std::invalid_argument(msg.str());
  }

  ClusteringResult result;
  result.nu = options.nu ? *options.nu : default_nu(g);
  require_positive_at_endpoints(g, result.nu);

  FlowLaplacian l;
  DualGraph dual;
  if (options.phi) {
    l = build_flow_laplacian_general(g, *options.phi, kind);
    dual = dual_graph_from_phi(g, *options.phi);
  } else {
    const EdgeLaplacian le = build_edge_laplacian(g, result.nu);
    l = build_flow_laplacian(g, result.nu, kind, ConstructionPath::EdgeLaplacian);
    dual = build_dual_graph(le);
  }
  result.volumes = edge_volumes(g, result.nu);
  const NormalizedLaplacian lt = normalize_laplacian(l, result.volumes, options.normalized);

  result.basis = smallest_eigenpairs(lt, k, options.eigen);
  result.features = row_normalize(result.basis);
  KMeansResult km = kmeans_pp(result.features, k, options.seed, options.restarts);
  result.kmeans_objective = km.objective;
  result.warnings = g.warnings();
  result.warnings.insert(result.warnings.end(), km.warnings.begin(), km.warnings.end());

  result.assignment.labels = std::move(km.labels);
  result.assignment.clusters = km.clusters;
  result.assignment.seed = options.seed;
  result.assignment.report =
      cluster_report(dual, result.assignment.labels, km.clusters, kind, result.volumes);
  return result;
}

}  // namespace flowlap
