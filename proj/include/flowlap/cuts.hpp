#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flowlap/laplacian.hpp"
#include "flowlap/volume.hpp"

namespace flowlap {

/// Sums of dual weights over ordered dual-vertex pairs (p in A, q in B).
/// When A = B every unordered dual edge inside A is counted twice.
struct Links {
  double abs = 0.0;       // Cut(A, B)
  double positive = 0.0;  // Links+(A, B)
  double negative = 0.0;  // Links-(A, B)

  bool operator==(const Links&) const = default;
};

struct ClusterCut {
  Index size = 0;
  Links outward;  // (Sigma, complement); outward.abs is Cut(Sigma, complement)
  Links inside;   // (Sigma, Sigma)
  double volume = 0.0;
  double unscaled_cost = 0.0;
  double normalized_cost = 0.0;

  bool operator==(const ClusterCut&) const = default;
};

struct CutReport {
  std::vector<ClusterCut> clusters;
  double total_cut = 0.0;
  double total_unscaled_cost = 0.0;
  double total_normalized_cost = 0.0;

  bool operator==(const CutReport&) const = default;
};

/// Links between two label classes; a == b gives the within-class sums.
Links links_between(const DualGraph& dual, std::span<const int> labels, int a, int b);

/// Cut and link sums for labels in [0, k). Volumes and costs are left zero.
/// Throws std::invalid_argument on a label outside [0, k) or a length mismatch.
CutReport cut_quantities(const DualGraph& dual, std::span<const int> labels, int k);

/// UCost per cluster:
///   PRE  Cut(S, ~S) + 2 Links-(S, S)
///   DPE  Cut(S, ~S) + 2 Links+(S, S)
///   RGE  Cut(S, ~S)
std::vector<double> unscaled_cost(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind);

struct NormalizedCost {
  double total = 0.0;
  std::vector<double> per_cluster;
};

/// sum_k UCost_k / Vol(S_k). Throws std::invalid_argument on an empty cluster.
NormalizedCost normalized_cost(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind,
                               const EdgeVolumes& vols);

/// Everything above in one report. Empty clusters get normalized cost 0.
CutReport cluster_report(const DualGraph& dual, std::span<const int> labels, int k, Affinity kind,
                         const EdgeVolumes& vols);

struct BruteForceOptions {
  std::optional<VertexVector> nu;  // default_nu(g) when empty
  std::optional<PhiMatrix> phi;    // Phi(nu) when empty
  bool normalized = true;          // false: minimise total UCost
};

struct BruteForceResult {
  std::vector<int> labels;
  double cost = 0.0;
  long long partitions_checked = 0;
};

inline constexpr Index kBruteForceMaxEdges = 12;

/// Exhaustive minimum over all partitions of the edges into exactly k
/// nonempty clusters. Labels are in first-occurrence form; among equal costs
/// the lexicographically smallest label vector wins. Throws
/// std::invalid_argument when M > kBruteForceMaxEdges or k is not in [1, M].
BruteForceResult brute_force_min(const Digraph& g, Affinity kind, int k, const BruteForceOptions& options = {});

}  // namespace flowlap
