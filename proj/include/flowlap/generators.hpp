#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowlap/graph.hpp"

namespace flowlap {

/// Builds a named synthetic digraph from "name" or "name(a,b,...)".
///
///   lai7                  7 vertices, 9 edges
///   two-triangles         two disjoint directed 3-cycles
///   triangles(c)          c disjoint directed 3-cycles
///   inout-star(a,b)       a in-edges then b out-edges at center 0
///   path(n)               0 -> 1 -> ... -> n (n edges, default 2)
///   cockroach             10 vertices, 21 edges
///   cockroach(r,a)        two rails of r vertices, rungs both ways, a antenna edges per end
///   bottleneck(s)         two bidirectional s-cycles joined by one reciprocal pair
///   star-chain(c,l)       c chained centers, each with l out-leaves
///   random(n,m,seed)      n vertices, m distinct non-self edges, weights in (0, 10]
///   components(c,n,m,seed) c weakly connected random pieces of n vertices and m edges
///
/// Throws std::invalid_argument on an unknown name or bad parameters.
Digraph generate_synthetic(std::string_view spec);

std::vector<std::string> synthetic_names();

struct RandomGraphOptions {
  Index vertices = 8;
  Index edges = 12;
  bool self_edges = false;
  bool multi_edges = false;
  bool reciprocal_pairs = true;
  bool binary = false;        // unit weights
  double max_weight = 10.0;   // weights uniform in (0, max_weight]
  bool connected = false;     // start from a random spanning tree
};

/// Uniform draw in [0, 1), identical on every platform (unlike
/// std::uniform_real_distribution).
double uniform01(std::mt19937_64& rng);
/// Uniform integer in [0, n).
Index uniform_index(std::mt19937_64& rng, Index n);

Digraph random_digraph(const RandomGraphOptions& options, std::mt19937_64& rng);

/// Vertex-disjoint union; vertices and edges of parts[i] follow those of parts[i-1].
Digraph disjoint_union(std::span<const Digraph> parts);

}  // namespace flowlap
