#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flowlap/cuts.hpp"
#include "flowlap/volume.hpp"

namespace flowlap {

/// K smallest eigenpairs, ascending. Column j of `vectors` is a unit
/// eigenvector for values[j]; each is sign-fixed so that its largest-magnitude
/// entry (first one on ties) is positive.
struct EigenBasis {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

struct EigenOptions {
  /// Matrices up to this size go through a dense LAPACK solve; larger ones
  /// use shift-invert block subspace iteration on the sparse matrix.
  Index dense_cutoff = 4000;
  /// Residual target for the iterative path, relative to ||L||_inf.
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

/// Throws std::invalid_argument unless 1 <= k <= M, std::runtime_error when
/// the solver fails to converge.
EigenBasis smallest_eigenpairs(const SparseMatrix& matrix, Index k, const EigenOptions& options = {});
EigenBasis smallest_eigenpairs(const NormalizedLaplacian& lt, Index k, const EigenOptions& options = {});

struct FeatureMatrix {
  Eigen::MatrixXd rows;
  std::vector<bool> zero_row;
};

FeatureMatrix row_normalize(const EigenBasis& basis);
FeatureMatrix row_normalize(const Eigen::MatrixXd& y);

struct KMeansOptions {
  int max_iterations = 300;
  double relative_tolerance = 1e-9;
};

struct KMeansResult {
  std::vector<int> labels;  // first-occurrence order: edge 0 is in cluster 0
  int clusters = 0;         // < requested k only after an empty-cluster downgrade
  double objective = 0.0;   // sum of squared distances to assigned centroids
  Eigen::MatrixXd centroids;
  int best_restart = -1;
  std::vector<std::string> warnings;
};

/// k-means++ seeding followed by Lloyd iterations, best of `restarts` runs by
/// objective. Fully determined by (features, k, seed, restarts). Zero rows
/// are left out of the fit when enough other distinct rows exist and are then
/// assigned to the nearest centroid. Throws std::invalid_argument when k
/// exceeds the number of distinct rows.
KMeansResult kmeans_pp(const FeatureMatrix& features, int k, std::uint64_t seed, int restarts,
                       const KMeansOptions& options = {});

struct ClusterOptions {
  std::optional<VertexVector> nu;  // default_nu(g) when empty
  std::optional<PhiMatrix> phi;    // user pair weights; Phi(nu) when empty
  bool normalized = true;
  std::uint64_t seed = 0;
  int restarts = 20;
  EigenOptions eigen;
};

struct ClusterAssignment {
  std::vector<int> labels;
  int clusters = 0;
  std::uint64_t seed = 0;
  CutReport report;
};

struct ClusteringResult {
  ClusterAssignment assignment;
  EigenBasis basis;
  FeatureMatrix features;
  EdgeVolumes volumes;
  VertexVector nu;
  double kmeans_objective = 0.0;
  std::vector<std::string> warnings;
};

/// Full pipeline: nu -> L -> F -> normalized L (unless disabled) -> K
/// smallest eigenvectors -> row normalization -> k-means++ -> labels and
/// cut report.
ClusteringResult cluster_edges(const Digraph& g, Affinity kind, int k, const ClusterOptions& options = {});

}  // namespace flowlap
