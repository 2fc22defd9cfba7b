#include "flowlap/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace flowlap {

using Json = nlohmann::ordered_json;

namespace {

std::string located(const std::string& source, std::size_t line, const std::string& message) {
  std::ostringstream out;
  out << source << ":" << line << ": " << message;
  return out.str();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

Digraph read_edge_list(std::istream& in, const ReadOptions& options, const std::string& source) {
  std::vector<Edge> edges;
  Index max_vertex = -1;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view view = text;
    view = view.substr(0, view.find('#'));
    const auto fields = split_fields(view);
    if (fields.empty()) continue;
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(source, line, "expected 'src dst [weight]', found " + std::to_string(fields.size()) + " fields");
    Edge e;
    for (int end = 0; end < 2; ++end) {
      const auto v = to_integer(fields[static_cast<std::size_t>(end)]);
      if (!v) throw ParseError(source, line, "vertex '" + std::string(fields[static_cast<std::size_t>(end)]) + "' is not an integer");
      const long long index = *v - (options.one_based ? 1 : 0);
      if (index < 0)
        throw ParseError(source, line, options.one_based ? "vertex indices start at 1" : "vertex indices start at 0");
      (end == 0 ? e.source : e.target) = static_cast<Index>(index);
    }
    if (fields.size() == 3) {
      const auto w = to_real(fields[2]);
      if (!w) throw ParseError(source, line, "weight '" + std::string(fields[2]) + "' is not a number");
      if (*w == 0.0 || !std::isfinite(*w)) throw ParseError(source, line, "weight must be finite and nonzero");
      e.weight = *w;
    }
    max_vertex = std::max({max_vertex, e.source, e.target});
    edges.push_back(e);
  }
  if (edges.empty()) throw ParseError(source, line, "no edges found");
  return build_digraph(edges, max_vertex + 1, options.directedness);
}

struct Coordinate {
  Index rows = 0;
  Index cols = 0;
  bool symmetric = false;
  std::vector<Eigen::Triplet<double>> entries;  // zero-based, file order, mirrors included
  std::size_t zero_entries = 0;
};

Coordinate read_coordinate(std::istream& in, const std::string& source) {
  std::string text;
  std::size_t line = 0;
  if (!std::getline(in, text)) throw ParseError(source, 1, "empty file");
  ++line;
  const auto header = split_fields(text);
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix")
    throw ParseError(source, line, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'");
  if (lower(header[2]) != "coordinate") throw ParseError(source, line, "only coordinate format is supported");
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (field != "real" && field != "integer" && field != "pattern")
    throw ParseError(source, line, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError(source, line, "unsupported symmetry '" + symmetry + "'");

  Coordinate c;
  c.symmetric = symmetry == "symmetric";
  long long declared = -1;
  long long seen = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = split_fields(text);
    if (fields.empty() || fields[0].front() == '%') continue;
    if (declared < 0) {
      if (fields.size() != 3) throw ParseError(source, line, "expected 'rows cols entries'");
      const auto r = to_integer(fields[0]), k = to_integer(fields[1]), n = to_integer(fields[2]);
      if (!r || !k || !n || *r < 0 || *k < 0 || *n < 0) throw ParseError(source, line, "malformed size line");
      c.rows = static_cast<Index>(*r);
      c.cols = static_cast<Index>(*k);
      declared = *n;
      continue;
    }
    const std::size_t expected = field == "pattern" ? 2 : 3;
    if (fields.size() != expected)
      throw ParseError(source, line, "expected " + std::to_string(expected) + " fields per entry");
    const auto i = to_integer(fields[0]), j = to_integer(fields[1]);
    if (!i || !j) throw ParseError(source, line, "malformed entry indices");
    if (*i < 1 || *i > c.rows || *j < 1 || *j > c.cols)
      throw ParseError(source, line, "entry (" + std::string(fields[0]) + ", " + std::string(fields[1]) +
                                         ") is outside the declared " + std::to_string(c.rows) + " x " +
                                         std::to_string(c.cols) + " matrix");
    double v = 1.0;
    if (field != "pattern") {
      const auto parsed = field == "integer" ? std::optional<double>() : to_real(fields[2]);
      const auto as_int = field == "integer" ? to_integer(fields[2]) : std::nullopt;
      if (field == "integer" && !as_int) throw ParseError(source, line, "entry value is not an integer");
      if (field == "real" && !parsed) throw ParseError(source, line, "entry value is not a number");
      v = field == "integer" ? static_cast<double>(*as_int) : *parsed;
      if (!std::isfinite(v)) throw ParseError(source, line, "entry value is not finite");
    }
    if (++seen > declared) throw ParseError(source, line, "more entries than the declared " + std::to_string(declared));
    if (v == 0.0) {
      ++c.zero_entries;
      continue;
    }
    const Index r = static_cast<Index>(*i - 1), k = static_cast<Index>(*j - 1);
    c.entries.emplace_back(r, k, v);
    if (c.symmetric && r != k) c.entries.emplace_back(k, r, v);
  }
  if (declared < 0) throw ParseError(source, line, "missing size line");
  if (seen < declared)
    throw ParseError(source, line, "file ends after " + std::to_string(seen) + " of " + std::to_string(declared) + " entries");
  return c;
}

Digraph read_matrix_market_graph(std::istream& in, const ReadOptions& options, const std::string& source) {
  const Coordinate c = read_coordinate(in, source);
  if (c.rows != c.cols)
    throw ParseError(source, 2, "adjacency matrix must be square, got " + std::to_string(c.rows) + " x " + std::to_string(c.cols));
  std::vector<Edge> edges;
  edges.reserve(c.entries.size());
  for (const auto& t : c.entries) edges.push_back({t.col(), t.row(), t.value()});
  if (edges.empty()) throw ParseError(source, 2, "no nonzero entries");
  Digraph g = build_digraph(edges, c.rows, options.directedness);
  if (c.zero_entries == 0) return g;
  std::vector<std::string> warnings = g.warnings();
  warnings.push_back(std::to_string(c.zero_entries) + " explicit zero entries skipped");
  std::vector<Edge> kept(g.edges().begin(), g.edges().end());
  return Digraph(g.num_vertices(), std::move(kept), std::move(warnings));
}

std::string real17(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

Json links_json(const Links& l) { return {{"cut", l.abs}, {"positive", l.positive}, {"negative", l.negative}}; }

Links links_from(const Json& j) { return {j.at("cut").get<double>(), j.at("positive").get<double>(), j.at("negative").get<double>()}; }

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(located(source, line, message)), line_(line) {}

InputFormat parse_input_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "auto") return InputFormat::Auto;
  if (n == "edgelist" || n == "txt") return InputFormat::EdgeList;
  if (n == "mtx" || n == "matrixmarket") return InputFormat::MatrixMarket;
  throw std::invalid_argument("unknown input format '" + std::string(name) + "' (expected auto, edgelist or mtx)");
}

std::string to_string(InputFormat format) {
  switch (format) {
    case InputFormat::Auto: return "auto";
    case InputFormat::EdgeList: return "edgelist";
    case InputFormat::MatrixMarket: return "mtx";
  }
  return "auto";
}

Digraph read_graph(std::istream& in, const ReadOptions& options, const std::string& source) {
  InputFormat format = options.format;
  if (format == InputFormat::Auto) {
    std::string head(14, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    in.clear();
    in.seekg(0);
    if (!in) throw std::runtime_error(source + ": input is not seekable; pass an explicit format");
    format = lower(head) == "%%matrixmarket" ? InputFormat::MatrixMarket : InputFormat::EdgeList;
  }
  return format == InputFormat::MatrixMarket ? read_matrix_market_graph(in, options, source)
                                             : read_edge_list(in, options, source);
}

Digraph read_graph(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in = open_input(path);
  return read_graph(in, options, path.string());
}

VertexVector read_nu(std::istream& in, Index num_vertices, const std::string& source) {
  std::vector<double> values;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view view = text;
    const auto fields = split_fields(view.substr(0, view.find('#')));
    if (fields.empty()) continue;
    if (fields.size() != 1) throw ParseError(source, line, "expected one value per line");
    const auto v = to_real(fields[0]);
    if (!v || !std::isfinite(*v)) throw ParseError(source, line, "'" + std::string(fields[0]) + "' is not a finite number");
    values.push_back(*v);
  }
  if (static_cast<Index>(values.size()) != num_vertices)
    throw ParseError(source, line, "expected " + std::to_string(num_vertices) + " values, found " + std::to_string(values.size()));
  VertexVector nu;
  nu.values = Eigen::Map<const Eigen::VectorXd>(values.data(), num_vertices);
  nu.source = VertexVector::Source::UserSupplied;
  return nu;
}

VertexVector read_nu(const std::filesystem::path& path, Index num_vertices) {
  std::ifstream in = open_input(path);
  return read_nu(in, num_vertices, path.string());
}

SparseMatrix read_matrix_market(std::istream& in, const std::string& source) {
  const Coordinate c = read_coordinate(in, source);
  SparseMatrix m(c.rows, c.cols);
  m.setFromTriplets(c.entries.begin(), c.entries.end());
  return m;
}

PhiMatrix read_phi(const std::filesystem::path& path, Index num_edges) {
  std::ifstream in = open_input(path);
  PhiMatrix phi{read_matrix_market(in, path.string())};
  if (phi.values.rows() != num_edges || phi.values.cols() != num_edges)
    throw std::invalid_argument(path.string() + ": Phi must be " + std::to_string(num_edges) + " x " +
                                std::to_string(num_edges));
  return phi;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix.rows() << " " << matrix.cols() << " " << matrix.nonZeros() << "\n";
  for (Index col = 0; col < matrix.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(matrix, col); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << real17(it.value()) << "\n";
}

std::string library_version() { return "0.1.0"; }

ResultDocument make_result_document(const RunConfig& config, const Digraph& g, const ClusteringResult& result) {
  ResultDocument doc;
  doc.config = config;
  doc.version = library_version();
  doc.eigen_version = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION);
  doc.num_vertices = g.num_vertices();
  doc.num_edges = g.num_edges();
  doc.clusters = result.assignment.clusters;
  doc.nu_source = result.nu.source == VertexVector::Source::WeightedDegree ? "weighted-degree" : "file";
  doc.eigenvalues.assign(result.basis.values.data(), result.basis.values.data() + result.basis.values.size());
  doc.kmeans_objective = result.kmeans_objective;
  for (Index p = 0; p < g.num_edges(); ++p) {
    const Edge& e = g.edge(p);
    doc.edges.push_back({p, e.source, e.target, e.weight, result.volumes.f[p],
                         result.assignment.labels[static_cast<std::size_t>(p)]});
  }
  doc.report = result.assignment.report;
  doc.warnings = result.warnings;
  return doc;
}

void write_csv(std::ostream& out, const ResultDocument& doc) {
  out << "edge_index,src,dst,weight,volume,cluster\n";
  for (const EdgeRecord& r : doc.edges)
    out << r.edge_index << "," << r.src << "," << r.dst << "," << real17(r.weight) << "," << real17(r.volume) << ","
        << r.cluster << "\n";
}

std::string to_json(const ResultDocument& doc) {
  const RunConfig& c = doc.config;
  Json config = {{"method", c.method},          {"k", c.k},
                 {"input", c.input},            {"generate", c.generate},
                 {"format", c.format},          {"nu", c.nu_path},
                 {"phi", c.phi_path},           {"normalized", c.normalized},
                 {"undirected", c.undirected},  {"one_based", c.one_based},
                 {"seed", c.seed},              {"restarts", c.restarts},
                 {"out_csv", c.out_csv},        {"out_json", c.out_json},
                 {"out_dot", c.out_dot},        {"dump_matrices", c.dump_matrices},
                 {"timings", c.timings}};
  Json j;
  j["version"] = doc.version;
  j["eigen_version"] = doc.eigen_version;
  j["config"] = config;
  if (doc.timings) j["timings"] = {{"load_seconds", doc.timings->load_seconds}, {"cluster_seconds", doc.timings->cluster_seconds}};
  j["num_vertices"] = doc.num_vertices;
  j["num_edges"] = doc.num_edges;
  j["clusters"] = doc.clusters;
  j["nu_source"] = doc.nu_source;
  j["eigenvalues"] = doc.eigenvalues;
  j["kmeans_objective"] = doc.kmeans_objective;
  Json edges = Json::array();
  for (const EdgeRecord& r : doc.edges)
    edges.push_back({{"edge_index", r.edge_index}, {"src", r.src}, {"dst", r.dst},
                     {"weight", r.weight}, {"volume", r.volume}, {"cluster", r.cluster}});
  j["edges"] = edges;
  Json clusters = Json::array();
  for (const ClusterCut& cc : doc.report.clusters)
    clusters.push_back({{"size", cc.size}, {"outward", links_json(cc.outward)}, {"inside", links_json(cc.inside)},
                        {"volume", cc.volume}, {"unscaled_cost", cc.unscaled_cost}, {"normalized_cost", cc.normalized_cost}});
  j["report"] = {{"clusters", clusters}, {"total_cut", doc.report.total_cut},
                 {"total_unscaled_cost", doc.report.total_unscaled_cost},
                 {"total_normalized_cost", doc.report.total_normalized_cost}};
  j["warnings"] = doc.warnings;
  return j.dump(2) + "\n";
}

ResultDocument result_from_json(std::string_view text) {
  const Json j = Json::parse(text);
  ResultDocument doc;
  const Json& c = j.at("config");
  doc.config.method = c.at("method").get<std::string>();
  doc.config.k = c.at("k").get<int>();
  doc.config.input = c.at("input").get<std::string>();
  doc.config.generate = c.at("generate").get<std::string>();
  doc.config.format = c.at("format").get<std::string>();
  doc.config.nu_path = c.at("nu").get<std::string>();
  doc.config.phi_path = c.at("phi").get<std::string>();
  doc.config.normalized = c.at("normalized").get<bool>();
  doc.config.undirected = c.at("undirected").get<bool>();
  doc.config.one_based = c.at("one_based").get<bool>();
  doc.config.seed = c.at("seed").get<std::uint64_t>();
  doc.config.restarts = c.at("restarts").get<int>();
  doc.config.out_csv = c.at("out_csv").get<std::string>();
  doc.config.out_json = c.at("out_json").get<std::string>();
  doc.config.out_dot = c.at("out_dot").get<std::string>();
  doc.config.dump_matrices = c.at("dump_matrices").get<std::string>();
  doc.config.timings = c.at("timings").get<bool>();
  doc.version = j.at("version").get<std::string>();
  doc.eigen_version = j.at("eigen_version").get<std::string>();
  if (j.contains("timings"))
    doc.timings = Timings{j["timings"].at("load_seconds").get<double>(), j["timings"].at("cluster_seconds").get<double>()};
  doc.num_vertices = j.at("num_vertices").get<Index>();
  doc.num_edges = j.at("num_edges").get<Index>();
  doc.clusters = j.at("clusters").get<int>();
  doc.nu_source = j.at("nu_source").get<std::string>();
  doc.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  doc.kmeans_objective = j.at("kmeans_objective").get<double>();
  for (const Json& r : j.at("edges"))
    doc.edges.push_back({r.at("edge_index").get<Index>(), r.at("src").get<Index>(), r.at("dst").get<Index>(),
                         r.at("weight").get<double>(), r.at("volume").get<double>(), r.at("cluster").get<int>()});
  const Json& report = j.at("report");
  for (const Json& cc : report.at("clusters")) {
    ClusterCut cut;
    cut.size = cc.at("size").get<Index>();
    cut.outward = links_from(cc.at("outward"));
    cut.inside = links_from(cc.at("inside"));
    cut.volume = cc.at("volume").get<double>();
    cut.unscaled_cost = cc.at("unscaled_cost").get<double>();
    cut.normalized_cost = cc.at("normalized_cost").get<double>();
    doc.report.clusters.push_back(cut);
  }
  doc.report.total_cut = report.at("total_cut").get<double>();
  doc.report.total_unscaled_cost = report.at("total_unscaled_cost").get<double>();
  doc.report.total_normalized_cost = report.at("total_normalized_cost").get<double>();
  doc.warnings = j.at("warnings").get<std::vector<std::string>>();
  return doc;
}

void write_dot(std::ostream& out, const Digraph& g, const std::vector<int>& labels) {
  static constexpr std::array<const char*, 12> palette = {
      "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
  if (static_cast<Index>(labels.size()) != g.num_edges()) throw std::invalid_argument("one label per edge required");
  out << "digraph flow_clusters {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (Index v = 0; v < g.num_vertices(); ++v) out << "  v" << v << " [label=\"" << v << "\"];\n";
  for (Index p = 0; p < g.num_edges(); ++p) {
    const Edge& e = g.edge(p);
    const int c = labels[static_cast<std::size_t>(p)];
    out << "  v" << e.source << " -> v" << e.target << " [dir=forward, color=\""
        << palette[static_cast<std::size_t>(c) % palette.size()] << "\", label=\"e" << p << ":c" << c
        << "\", cluster=" << c << "];\n";
  }
  out << "}\n";
}

}  // namespace flowlap
