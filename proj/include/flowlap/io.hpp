#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flowlap/spectral.hpp"

namespace flowlap {

/// Raised for malformed input files; what() names the source and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class InputFormat { Auto, EdgeList, MatrixMarket };

/// "auto", "edgelist" (or "txt"), "mtx" (or "matrixmarket").
InputFormat parse_input_format(std::string_view name);
std::string to_string(InputFormat format);

struct ReadOptions {
  InputFormat format = InputFormat::Auto;  // Auto: MatrixMarket when the file starts with %%MatrixMarket
  bool one_based = false;                  // edge lists only; MatrixMarket is always 1-based
  Directedness directedness = Directedness::Directed;
};

/// Edge list: one "src dst [weight]" record per line, separated by
/// whitespace or commas. '#' starts a comment. The vertex count is one more
/// than the largest index seen.
///
/// MatrixMarket: "coordinate" with real, integer or pattern values, general
/// or symmetric. Entry (i, j) is the edge j -> i.
Digraph read_graph(std::istream& in, const ReadOptions& options, const std::string& source = "<input>");
Digraph read_graph(const std::filesystem::path& path, const ReadOptions& options = {});

/// One real per line ('#' comments and blank lines ignored), exactly N values.
VertexVector read_nu(const std::filesystem::path& path, Index num_vertices);
VertexVector read_nu(std::istream& in, Index num_vertices, const std::string& source = "<input>");

/// MatrixMarket coordinate M x M matrix. Symmetric files are mirrored.
SparseMatrix read_matrix_market(std::istream& in, const std::string& source = "<input>");
PhiMatrix read_phi(const std::filesystem::path& path, Index num_edges);

/// Coordinate real general, one-based, all stored entries.
void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);

struct RunConfig {
  std::string method = "rge";
  int k = 2;
  std::string input;     // file path, empty when generated
  std::string generate;  // generator spec, empty when read from file
  std::string format = "auto";
  std::string nu_path;   // empty: weighted-degree nu
  std::string phi_path;  // empty: Phi(nu)
  bool normalized = true;
  bool undirected = false;
  bool one_based = false;
  std::uint64_t seed = 0;
  int restarts = 20;
  std::string out_csv;
  std::string out_json;
  std::string out_dot;
  std::string dump_matrices;
  bool timings = false;

  bool operator==(const RunConfig&) const = default;
};

struct EdgeRecord {
  Index edge_index = 0;
  Index src = 0;
  Index dst = 0;
  double weight = 0.0;
  double volume = 0.0;
  int cluster = 0;

  bool operator==(const EdgeRecord&) const = default;
};

struct Timings {
  double load_seconds = 0.0;
  double cluster_seconds = 0.0;

  bool operator==(const Timings&) const = default;
};

struct ResultDocument {
  RunConfig config;
  std::string version;
  std::string eigen_version;
  std::optional<Timings> timings;  // only with RunConfig::timings, so default output is reproducible
  Index num_vertices = 0;
  Index num_edges = 0;
  int clusters = 0;
  std::string nu_source;
  std::vector<double> eigenvalues;
  double kmeans_objective = 0.0;
  std::vector<EdgeRecord> edges;
  CutReport report;
  std::vector<std::string> warnings;

  bool operator==(const ResultDocument&) const = default;
};

std::string library_version();

ResultDocument make_result_document(const RunConfig& config, const Digraph& g, const ClusteringResult& result);

/// Header edge_index,src,dst,weight,volume,cluster; reals printed with 17
/// significant digits.
void write_csv(std::ostream& out, const ResultDocument& doc);
std::string to_json(const ResultDocument& doc);
ResultDocument result_from_json(std::string_view text);

/// Graphviz digraph; each edge colored by its cluster, dir=forward.
void write_dot(std::ostream& out, const Digraph& g, const std::vector<int>& labels);

}  // namespace flowlap
