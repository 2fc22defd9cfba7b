#include <gtest/gtest.h>

#include <random>

#include "flowlap/generators.hpp"
#include "flowlap/volume.hpp"
#include "oracles.hpp"

using namespace flowlap;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Digraph path2() { return Digraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

Digraph random_binary(std::mt19937_64& rng, bool reciprocal = true) {
  RandomGraphOptions o;
  o.vertices = 3 + uniform_index(rng, 12);
  const Index cap = reciprocal ? o.vertices * (o.vertices - 1) : o.vertices * (o.vertices - 1) / 2;
  o.edges = std::min<Index>(2 + uniform_index(rng, 39), cap);
  o.binary = true;
  o.reciprocal_pairs = reciprocal;
  return random_digraph(o, rng);
}

}  // namespace

TEST(EdgeVolumes, UnitPath) {
  const EdgeVolumes v = edge_volumes(path2(), default_nu(path2()));
  EXPECT_DOUBLE_EQ(v.f[0], 1.25);
  EXPECT_DOUBLE_EQ(v.f[1], 1.25);
  EXPECT_DOUBLE_EQ(oracle::binary_volumes(path2())[0], 1.25);
}

TEST(EdgeVolumes, IsolatedPairReachesOneOverM) {
  std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}};
  const Digraph g(5, edges);
  EXPECT_EQ(edge_volumes(g, default_nu(g)).f[4], 1.0 / 5.0);
}

TEST(EdgeVolumes, BinaryCorollaryAndBounds) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const Digraph g = random_binary(rng);
    const VectorXd f = edge_volumes(g, default_nu(g)).f;
    const VectorXd expected = oracle::binary_volumes(g);
    EXPECT_LT((f - expected).cwiseAbs().maxCoeff(), 1e-12);
    const VertexStats s = vertex_stats(g);
    const double m = static_cast<double>(g.num_edges());
    for (Index p = 0; p < g.num_edges(); ++p) {
      const Edge& e = g.edge(p);
      const double lower = static_cast<double>(s.out_count[static_cast<std::size_t>(e.source)] +
                                               s.in_count[static_cast<std::size_t>(e.target)]) / (2.0 * m);
      EXPECT_LE(lower, f[p] * (1 + 1e-12));
      EXPECT_LE(f[p], m);
    }
  }
}

TEST(EdgeVolumes, SelfEdgeUsesOneVertexTwice) {
  const Digraph g(2, {{0, 0, 2.0}, {0, 1, 1.0}});
  const VertexVector nu = default_nu(g);
  const VertexStats s = vertex_stats(g);
  const double expected = 2.0 / 2.0 * (3.0 * nu.values[0] / s.out_abs[0] + 3.0 * nu.values[0] / s.in_abs[0]);
  EXPECT_DOUBLE_EQ(edge_volumes(g, nu).f[0], expected);
}

TEST(EdgeVolumes, RequiresPositiveNuAtEndpoints) {
  EXPECT_THROW(edge_volumes(path2(), VertexVector{Eigen::Vector3d(1, 0, 1)}), std::invalid_argument);
}

TEST(EdgeVolumes, ClusterVolumesAddUp) {
  const Digraph g = generate_synthetic("cockroach");
  const EdgeVolumes v = edge_volumes(g, default_nu(g));
  std::vector<int> labels;
  for (Index p = 0; p < g.num_edges(); ++p) labels.push_back(static_cast<int>(p % 3));
  double total = 0.0;
  for (int c = 0; c < 3; ++c) total += v.cluster_volume(labels, c);
  EXPECT_NEAR(total, v.f.sum(), 1e-12);
}

TEST(Normalize, IdentityVolumesLeaveLUnchanged) {
  const Digraph g = generate_synthetic("lai7");
  const FlowLaplacian l = build_flow_laplacian(g, default_nu(g), Affinity::PRE);
  const NormalizedLaplacian lt = normalize_laplacian(l, EdgeVolumes{VectorXd::Ones(g.num_edges())});
  EXPECT_EQ(MatrixXd(lt.values), MatrixXd(l.values));
  EXPECT_TRUE(lt.normalized);
}

TEST(Normalize, PathRgeScalesByVolume) {
  const Digraph g = path2();
  const VertexVector nu = default_nu(g);
  const FlowLaplacian l = build_flow_laplacian(g, nu, Affinity::RGE);
  const NormalizedLaplacian lt = normalize_laplacian(l, edge_volumes(g, nu));
  EXPECT_LT((MatrixXd(lt.values) - MatrixXd(l.values) / 1.25).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Normalize, UnnormalizedModeReturnsL) {
  const Digraph g = path2();
  const FlowLaplacian l = build_flow_laplacian(g, default_nu(g), Affinity::PRE);
  const NormalizedLaplacian lt = normalize_laplacian(l, edge_volumes(g, default_nu(g)), false);
  EXPECT_FALSE(lt.normalized);
  EXPECT_EQ(MatrixXd(lt.values), MatrixXd(l.values));
}

TEST(Normalize, RejectsNonPositiveVolume) {
  const Digraph g = path2();
  const FlowLaplacian l = build_flow_laplacian(g, default_nu(g), Affinity::PRE);
  EXPECT_THROW(normalize_laplacian(l, EdgeVolumes{Eigen::Vector2d(1.0, 0.0)}), std::invalid_argument);
}

TEST(Normalize, RandomSymmetricPsd) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 40; ++t) {
    RandomGraphOptions o;
    o.vertices = 2 + uniform_index(rng, 14);
    o.edges = 1 + uniform_index(rng, 40);
    o.self_edges = true;
    o.multi_edges = true;
    const Digraph g = random_digraph(o, rng);
    const VertexVector nu = default_nu(g);
    for (Affinity kind : {Affinity::PRE, Affinity::DPE, Affinity::RGE}) {
      const MatrixXd lt = MatrixXd(normalize_laplacian(build_flow_laplacian(g, nu, kind), edge_volumes(g, nu)).values);
      EXPECT_LT((lt - lt.transpose()).cwiseAbs().maxCoeff(), 1e-14);
      const VectorXd ev = oracle::eigenvalues(lt);
      EXPECT_GE(ev.minCoeff(), -1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(Normalize, ScalingNuLeavesNormalizedLaplacianUnchanged) {
  const Digraph g = generate_synthetic("cockroach");
  VertexVector nu = default_nu(g);
  VertexVector scaled{3.7 * nu.values};
  for (Affinity kind : {Affinity::PRE, Affinity::DPE, Affinity::RGE}) {
    const MatrixXd a = MatrixXd(normalize_laplacian(build_flow_laplacian(g, nu, kind), edge_volumes(g, nu)).values);
    const MatrixXd b =
        MatrixXd(normalize_laplacian(build_flow_laplacian(g, scaled, kind), edge_volumes(g, scaled)).values);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(MonotonicityProbe, PathReport) {
  const Digraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {1, 0, 1.0}, {0, 2, 1.0}});
  const VolumeProbeReport r = volume_monotonicity_probe(g, 0, 0.1);
  EXPECT_TRUE(r.own_weight.applicable());
  EXPECT_TRUE(r.own_weight.holds());
  ASSERT_TRUE(r.competing_edge.applicable());
  EXPECT_EQ(*r.competing_edge.perturbed_edge, 3);
  EXPECT_TRUE(r.competing_edge.holds());
  ASSERT_TRUE(r.feeding_edge.applicable());
  EXPECT_EQ(*r.feeding_edge.perturbed_edge, 2);
  EXPECT_TRUE(r.feeding_edge.holds());
}

TEST(MonotonicityProbe, HoldsOnRandomBinaryGraphs) {
  std::mt19937_64 rng(33);
  int competing = 0, feeding = 0;
  for (int t = 0; t < 100; ++t) {
    const Digraph g = random_binary(rng);
    for (Index p = 0; p < g.num_edges(); ++p) {
      const VolumeProbeReport r = volume_monotonicity_probe(g, p, 0.1);
      EXPECT_TRUE(r.own_weight.holds());
      if (r.competing_edge.applicable()) {
        ++competing;
        EXPECT_TRUE(r.competing_edge.holds());
      }
      if (r.feeding_edge.applicable()) {
        ++feeding;
        EXPECT_TRUE(r.feeding_edge.holds());
      }
    }
  }
  EXPECT_GT(competing, 500);
  EXPECT_GT(feeding, 100);
}

// Raising an arbitrary in-edge of l_p can lower f_p: it also raises nu_l
// against every other vertex through ||w||_1. Edge k_p -> l_p raises both
// <d_in,l> and <d_out,k> and does not show this.
TEST(MonotonicityProbe, ArbitraryInEdgeOfSourceCanDecrease) {
  // l = 0, k = 1, x1..x5 = 2..6, m = 7.
  std::vector<Edge> edges{{0, 1, 1.0}};
  for (Index x = 2; x <= 6; ++x) edges.push_back({1, x, 1.0});
  edges.push_back({7, 0, 1.0});
  const Digraph g(8, edges);
  const double before = edge_volumes(g, default_nu(g)).f[0];
  const Digraph raised = g.with_weight(6, 1.1);
  const double after = edge_volumes(raised, default_nu(raised)).f[0];
  EXPECT_LT(after, before);
  EXPECT_FALSE(volume_monotonicity_probe(g, 0, 0.1).feeding_edge.applicable());
}

TEST(MonotonicityProbe, RejectsBadArguments) {
  EXPECT_THROW(volume_monotonicity_probe(path2(), 5, 0.1), std::out_of_range);
  EXPECT_THROW(volume_monotonicity_probe(path2(), 0, 0.0), std::invalid_argument);
}
