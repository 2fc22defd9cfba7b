#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "flowlap/generators.hpp"
#include "flowlap/spectral.hpp"

namespace flowlap {

namespace {

bool row_less(const Eigen::MatrixXd& m, Index a, Index b) {
  for (Index j = 0; j < m.cols(); ++j) {
    if (m(a, j) < m(b, j)) return true;
    if (m(b, j) < m(a, j)) return false;
  }
  return false;
}

Index count_distinct(const Eigen::MatrixXd& points, const std::vector<Index>& rows) {
  std::vector<Index> order = rows;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return row_less(points, a, b); });
  Index distinct = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (i == 0 || row_less(points, order[i - 1], order[i])) ++distinct;
  return distinct;
}

// Nearest centroid; ties go to the lowest index.
std::pair<int, double> nearest(const Eigen::MatrixXd& points, Index row, const Eigen::MatrixXd& centroids) {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < centroids.rows(); ++c) {
    const double d2 = (points.row(row) - centroids.row(c)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(c);
    }
  }
  return {best, best_d2};
}

struct Run {
  std::vector<int> labels;  // over the fitted rows
  Eigen::MatrixXd centroids;
  double objective = 0.0;
  bool has_empty_cluster = false;
};

Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& points, const std::vector<Index>& rows, int k,
                               std::mt19937_64& rng) {
  const auto n = rows.size();
  Eigen::MatrixXd centroids(k, points.cols());
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  auto first = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  centroids.row(0) = points.row(rows[std::min(first, n - 1)]);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(rows[i]) - centroids.row(c - 1)).squaredNorm());
      total += d2[i];
    }
    const double target = uniform01(rng) * total;
    std::size_t pick = n;
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      running += d2[i];
      pick = i;
      if (running > target) break;
    }
    centroids.row(c) = points.row(rows[pick]);
  }
  return centroids;
}

Run lloyd(const Eigen::MatrixXd& points, const std::vector<Index>& rows, Eigen::MatrixXd centroids,
          const KMeansOptions& options) {
  const int k = static_cast<int>(centroids.rows());
  Run run;
  run.labels.assign(rows.size(), 0);
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    run.objective = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto [label, d2] = nearest(points, rows[i], centroids);
      run.labels[i] = label;
      run.objective += d2;
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sums.row(run.labels[i]) += points.row(rows[i]);
      ++sizes[static_cast<std::size_t>(run.labels[i])];
    }
    run.has_empty_cluster = std::any_of(sizes.begin(), sizes.end(), [](Index s) { return s == 0; });
    if (run.has_empty_cluster) break;
    for (int c = 0; c < k; ++c) centroids.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);

    const bool settled = std::abs(previous - run.objective) <= options.relative_tolerance * std::max(previous, 1e-300) ||
                         run.objective == 0.0;
    previous = run.objective;
    if (settled) break;
  }
  run.centroids = std::move(centroids);
  return run;
}

}  // namespace

KMeansResult kmeans_pp(const FeatureMatrix& features, int k, std::uint64_t seed, int restarts,
                       const KMeansOptions& options) {
  const Eigen::MatrixXd& points = features.rows;
  const Index n = points.rows();
  if (k < 1) throw std::invalid_argument("cluster count must be at least 1");
  if (restarts < 1) throw std::invalid_argument("restart count must be at least 1");

  std::vector<Index> all(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const Index distinct = count_distinct(points, all);
  if (k > distinct) {
    std::ostringstream msg;
    msg << "cannot form " << k << " clusters from " << distinct << " distinct feature rows";
    throw std::invalid_argument(msg.str());
  }

  std::vector<Index> fit;
  for (Index i = 0; i < n; ++i)
    if (features.zero_row.empty() || !features.zero_row[static_cast<std::size_t>(i)]) fit.push_back(i);
  if (static_cast<Index>(fit.size()) < n && count_distinct(points, fit) < k) fit = all;

  std::mt19937_64 rng(seed);
  std::optional<Run> best;
  std::optional<Run> best_degenerate;
  int best_restart = -1;
  for (int r = 0; r < restarts; ++r) {
    Run run = lloyd(points, fit, seed_centroids(points, fit, k, rng), options);
    if (!run.has_empty_cluster) {
      if (!best || run.objective < best->objective) {
        best = std::move(run);
        best_restart = r;
      }
    } else if (!best_degenerate || run.objective < best_degenerate->objective) {
      best_degenerate = std::move(run);
    }
  }

  KMeansResult result;
  Eigen::MatrixXd centroids;
  if (best) {
    centroids = best->centroids;
    result.best_restart = best_restart;
  } else {
    // Every restart lost a cluster: keep the nonempty ones of the best attempt.
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int label : best_degenerate->labels) used[static_cast<std::size_t>(label)] = true;
    std::vector<Index> keep;
    for (int c = 0; c < k; ++c)
      if (used[static_cast<std::size_t>(c)]) keep.push_back(c);
    centroids.resize(static_cast<Index>(keep.size()), points.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) centroids.row(static_cast<Index>(i)) = best_degenerate->centroids.row(keep[i]);
    std::ostringstream msg;
    msg << "every k-means restart produced an empty cluster; returning " << keep.size() << " of " << k << " clusters";
    result.warnings.push_back(msg.str());
  }

  // Final assignment of every row (zero rows included), then relabel by first occurrence.
  std::vector<int> raw(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = nearest(points, i, centroids).first;
  std::vector<int> relabel(static_cast<std::size_t>(centroids.rows()), -1);
  int next = 0;
  for (int& label : raw) {
    int& mapped = relabel[static_cast<std::size_t>(label)];
    if (mapped < 0) mapped = next++;
    label = mapped;
  }
  result.clusters = next;
  result.centroids.resize(next, points.cols());
  for (std::size_t c = 0; c < relabel.size(); ++c)
    if (relabel[c] >= 0) result.centroids.row(relabel[c]) = centroids.row(static_cast<Index>(c));
  result.labels = std::move(raw);
  for (Index i = 0; i < n; ++i)
    result.objective += (points.row(i) - result.centroids.row(result.labels[static_cast<std::size_t>(i)])).squaredNorm();
  if (result.clusters < static_cast<int>(centroids.rows()) && result.warnings.empty())
    result.warnings.push_back("final assignment left a centroid without members");
  return result;
}

}  // namespace flowlap
