#pragma once

#include <string>
#include <string_view>

#include "flowlap/graph.hpp"

namespace flowlap {

/// Edge functional affinity: which edge pairs "belong together".
///   PRE  edges converging on or diverging from a common vertex
///   DPE  edge pairs forming a length-2 directed path
///   RGE  any pair sharing a vertex, direction ignored
enum class Affinity { PRE, DPE, RGE };

std::string to_string(Affinity kind);
/// Accepts "pre", "dpe", "rge" in any case. Throws std::invalid_argument.
Affinity parse_affinity(std::string_view name);

/// Symmetric M x M matrix with entries in {-1, 0, +1}. Diagonal is +1 for
/// PRE/RGE and -1 for DPE.
struct PsiMatrix {
  Affinity kind = Affinity::PRE;
  SparseMatrix values;
};

/// Symmetric, non-negative M x M pair weights with a zero diagonal.
struct PhiMatrix {
  SparseMatrix values;
};

/// L_e(nu) = B^T diag(nu) B.
struct EdgeLaplacian {
  SparseMatrix values;
  Eigen::VectorXd nu;
};

/// Signed undirected graph on the digraph's edges. weights is W' (zero
/// diagonal); abs_degree is |W'| 1.
struct DualGraph {
  SparseMatrix weights;
  Eigen::VectorXd abs_degree;

  Index num_vertices() const { return weights.rows(); }
  /// Nonzero entries strictly above the diagonal.
  Index num_edges() const;
};

enum class ConstructionPath { PsiPhi, EdgeLaplacian };

struct FlowLaplacian {
  SparseMatrix values;
  Affinity kind = Affinity::PRE;
  ConstructionPath path = ConstructionPath::EdgeLaplacian;
};

PsiMatrix build_psi(const Digraph& g, Affinity kind);

/// phi_pq = sum of nu_i over the vertices v_i shared by e_p and e_q (p != q).
/// Self-edges take part in no pair. Requires nu >= 0.
PhiMatrix build_phi(const Digraph& g, const VertexVector& nu);

/// Throws std::invalid_argument unless phi is M x M, symmetric, non-negative,
/// zero on the diagonal, and zero on every pair of edges that share no vertex.
void validate_phi(const Digraph& g, const PhiMatrix& phi);

/// nu may hold any real values here.
EdgeLaplacian build_edge_laplacian(const Digraph& g, const VertexVector& nu);

/// (L_e w)_p = nu_l d_net,l - nu_k d_net,k for e_p = (l -> k).
Eigen::VectorXd edge_differential(const EdgeLaplacian& le, const Eigen::VectorXd& w);

DualGraph build_dual_graph(const EdgeLaplacian& le);

/// Dual graph whose signed weights are Psi_PRE .* Phi. Equals
/// build_dual_graph(build_edge_laplacian(g, nu)) when phi = build_phi(g, nu)
/// and nu > 0.
DualGraph dual_graph_from_phi(const Digraph& g, const PhiMatrix& phi);

/// Flow Laplacian for the default Phi(nu) along either construction path:
///   PsiPhi         L = D_Phi - Psi .* Phi
///   EdgeLaplacian  L_PRE = D_|W'| - W',  L_DPE = D_|W'| + W',
///                  L_RGE = D_|W'| - |W'|
/// The edge-Laplacian path requires nu > 0 at every edge endpoint.
FlowLaplacian build_flow_laplacian(const Digraph& g, const VertexVector& nu, Affinity kind,
                                   ConstructionPath path = ConstructionPath::EdgeLaplacian);

/// L = D_PsiPhi - Psi .* Phi for a user-specified Phi, with
/// d_PsiPhi(p) = 1/2 sum_q phi_pq (1 + psi_pq^2).
FlowLaplacian build_flow_laplacian_general(const Digraph& g, const PhiMatrix& phi, Affinity kind);

}  // namespace flowlap
