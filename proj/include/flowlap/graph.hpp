#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace flowlap {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// One directed edge e_p = (source -> target) with its weight.
struct Edge {
  Index source = 0;
  Index target = 0;
  double weight = 1.0;

  bool is_self_edge() const { return source == target; }
};

enum class Directedness { Directed, Undirected };

/**
 * Weighted digraph with a fixed edge enumeration.
 *
 * Edge p of the digraph is always edges()[p]; every matrix indexed by edges
 * (incidence columns, Laplacian rows, volumes, labels) uses that order.
 * Multi-edges and self-edges are kept as separate edges. All stored weights
 * are finite and strictly positive; build_digraph() is the entry point that
 * turns signed or undirected input into that form.
 */
class Digraph {
 public:
  Digraph() = default;
  /// Throws std::invalid_argument on out-of-range endpoints or weights that
  /// are not finite and strictly positive.
  Digraph(Index num_vertices, std::vector<Edge> edges, std::vector<std::string> warnings = {});

  Index num_vertices() const { return num_vertices_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const Edge& edge(Index p) const { return edges_[static_cast<std::size_t>(p)]; }
  std::span<const Edge> edges() const { return edges_; }
  Eigen::VectorXd weights() const;

  /// Notes recorded while normalizing the input (e.g. signed weights).
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Copy of this graph with edge p reweighted.
  Digraph with_weight(Index p, double weight) const;

 private:
  Index num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> warnings_;
};

/// Builds a digraph from raw (src, dst, weight) records. Undirected input
/// expands each edge into both orientations (edge i becomes edges 2i, 2i+1).
/// Negative weights are replaced by their absolute value and a warning is
/// recorded. Zero and non-finite weights are rejected.
Digraph build_digraph(std::span<const Edge> edge_list, Index num_vertices,
                      Directedness directedness = Directedness::Directed);

struct VertexStats {
  std::vector<Index> social_participation;  // sigma_i, self-edge counts twice
  std::vector<Index> out_count;             // sigma_out,i
  std::vector<Index> in_count;              // sigma_in,i
  Eigen::VectorXd out_abs;                  // <d_out,i>
  Eigen::VectorXd in_abs;                   // <d_in,i>
  Eigen::VectorXd total_abs;                // <d_i>
  Eigen::VectorXd out;                      // d_out,i
  Eigen::VectorXd in;                       // d_in,i
  Eigen::VectorXd net;                      // d_net,i = d_out,i - d_in,i
};

VertexStats vertex_stats(const Digraph& g);

/// d_net for an arbitrary edge-weight vector w on the edges of g.
Eigen::VectorXd net_degrees(const Digraph& g, const Eigen::VectorXd& w);

/// Per-vertex importance nu.
struct VertexVector {
  enum class Source { WeightedDegree, UserSupplied };

  Eigen::VectorXd values;
  Source source = Source::UserSupplied;
};

/// nu_i = <d_i> / ||w||_1. Sums to 2.
VertexVector default_nu(const Digraph& g);

/// Checks nu has one entry per vertex and is strictly positive at every edge
/// endpoint. Throws std::invalid_argument otherwise.
void require_positive_at_endpoints(const Digraph& g, const VertexVector& nu);

/// Unweighted incidence matrix B (N x M): +1 at the source, -1 at the
/// target, an all-zero column for a self-edge.
struct IncidenceMatrix {
  SparseMatrix values;
};

IncidenceMatrix incidence(const Digraph& g);

/// Number of weakly connected components and the component id per vertex.
struct Components {
  Index count = 0;
  std::vector<Index> of_vertex;
};

Components weak_components(const Digraph& g);

}  // namespace flowlap
