#include "flowlap/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "flowlap/generators.hpp"
#include "flowlap/io.hpp"

namespace flowlap {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void dump(const std::filesystem::path& dir, const std::string& name, const SparseMatrix& m) {
  std::ofstream out = open_output(dir / name);
  write_matrix_market(out, m);
}

void dump_matrices(const std::filesystem::path& dir, const Digraph& g, Affinity kind, const ClusterOptions& options,
                   const VertexVector& nu, const EdgeVolumes& vols) {
  std::filesystem::create_directories(dir);
  const PhiMatrix phi = options.phi ? *options.phi : build_phi(g, nu);
  const EdgeLaplacian le = build_edge_laplacian(g, nu);
  const DualGraph dual = options.phi ? dual_graph_from_phi(g, phi) : build_dual_graph(le);
  const FlowLaplacian l = options.phi ? build_flow_laplacian_general(g, phi, kind)
                                      : build_flow_laplacian(g, nu, kind, ConstructionPath::EdgeLaplacian);
  dump(dir, "psi.mtx", build_psi(g, kind).values);
  dump(dir, "phi.mtx", phi.values);
  dump(dir, "edge_laplacian.mtx", le.values);
  dump(dir, "dual_weights.mtx", dual.weights);
  dump(dir, "laplacian.mtx", l.values);
  dump(dir, "normalized_laplacian.mtx", normalize_laplacian(l, vols, options.normalized).values);
}

void print_summary(std::ostream& out, const ResultDocument& doc) {
  out << "method " << doc.config.method << (doc.config.normalized ? "" : " (unnormalized)") << ", N = " << doc.num_vertices
      << ", M = " << doc.num_edges << ", K = " << doc.clusters << "\n";
  out << "eigenvalues";
  for (double v : doc.eigenvalues) out << " " << std::setprecision(6) << v;
  out << "\n";
  for (std::size_t c = 0; c < doc.report.clusters.size(); ++c) {
    const ClusterCut& cc = doc.report.clusters[c];
    out << "cluster " << c << ": " << cc.size << " edges, volume " << std::setprecision(6) << cc.volume << ", cut "
        << cc.outward.abs << ", ucost " << cc.unscaled_cost << ", ncost " << cc.normalized_cost << "\n";
  }
  out << "total ncost " << std::setprecision(10) << doc.report.total_normalized_cost << "\n";
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Affinity kind = parse_affinity(config.method);
  if (config.k < 1) throw UsageError("--k must be at least 1");
  if (config.restarts < 1) throw UsageError("--restarts must be at least 1");
  if (config.input.empty() == config.generate.empty()) throw UsageError("give exactly one of --input and --generate");

  ReadOptions read;
  read.format = parse_input_format(config.format);
  read.one_based = config.one_based;
  read.directedness = config.undirected ? Directedness::Undirected : Directedness::Directed;
  Digraph g;
  if (!config.input.empty()) {
    g = read_graph(config.input, read);
  } else {
    g = generate_synthetic(config.generate);
    if (config.undirected) g = build_digraph(g.edges(), g.num_vertices(), Directedness::Undirected);
  }
  if (config.k > g.num_edges())
    throw UsageError("--k " + std::to_string(config.k) + " exceeds the edge count " + std::to_string(g.num_edges()));

  ClusterOptions options;
  if (!config.nu_path.empty()) options.nu = read_nu(config.nu_path, g.num_vertices());
  if (!config.phi_path.empty()) options.phi = read_phi(config.phi_path, g.num_edges());
  options.normalized = config.normalized;
  options.seed = config.seed;
  options.restarts = config.restarts;
  const auto loaded = std::chrono::steady_clock::now();

  const ClusteringResult result = cluster_edges(g, kind, config.k, options);
  const auto clustered = std::chrono::steady_clock::now();

  ResultDocument doc = make_result_document(config, g, result);
  if (config.timings)
    doc.timings = Timings{std::chrono::duration<double>(loaded - start).count(),
                          std::chrono::duration<double>(clustered - loaded).count()};

  if (!config.out_csv.empty()) {
    std::ofstream f = open_output(config.out_csv);
    write_csv(f, doc);
  }
  if (!config.out_json.empty()) {
    std::ofstream f = open_output(config.out_json);
    f << to_json(doc);
  }
  if (!config.out_dot.empty()) {
    std::ofstream f = open_output(config.out_dot);
    write_dot(f, g, result.assignment.labels);
  }
  if (!config.dump_matrices.empty()) dump_matrices(config.dump_matrices, g, kind, options, result.nu, result.volumes);

  for (const std::string& w : doc.warnings) err << "warning: " << w << "\n";
  print_summary(out, doc);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge clustering of weighted digraphs with flow Laplacians"};
  app.name("flowlap");
  RunConfig config;
  app.add_option("--method", config.method, "Edge affinity: pre, dpe or rge")
      ->check(CLI::IsMember({"pre", "dpe", "rge"}, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--k", config.k, "Number of edge clusters")->required();
  app.add_option("--input", config.input, "Edge list or MatrixMarket file");
  app.add_option("--generate", config.generate, "Synthetic digraph, e.g. lai7 or inout-star(2,2)");
  app.add_option("--format", config.format, "Input format: auto, edgelist or mtx")->capture_default_str();
  app.add_option("--nu", config.nu_path, "Vertex importance file, one value per line");
  app.add_option("--phi", config.phi_path, "MatrixMarket file with user pair weights Phi (M x M)");
  app.add_flag("--unnormalized", "Cluster with L instead of F^-1/2 L F^-1/2");
  app.add_flag("--undirected", config.undirected, "Expand every input edge into both orientations");
  app.add_flag("--one-based", config.one_based, "Edge-list vertex indices start at 1");
  app.add_option("--seed", config.seed, "k-means++ seed")->capture_default_str();
  app.add_option("--restarts", config.restarts, "k-means++ restarts")->capture_default_str();
  app.add_option("--out-csv", config.out_csv, "Per-edge CSV output");
  app.add_option("--out-json", config.out_json, "Full JSON result document");
  app.add_option("--out-dot", config.out_dot, "Graphviz export with cluster colors");
  app.add_option("--dump-matrices", config.dump_matrices, "Directory for Psi, Phi, L_e, W', L and normalized L");
  app.add_flag("--timings", config.timings, "Include wall-clock timings in the JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  config.normalized = app.count("--unnormalized") == 0;
  std::transform(config.method.begin(), config.method.end(), config.method.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  try {
    return execute(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const std::string& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(args.size()), argv.data(), out, err);
}

}  // namespace flowlap
