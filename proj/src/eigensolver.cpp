#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <lapacke.h>

#include "flowlap/spectral.hpp"

namespace flowlap {

namespace {

double inf_norm(const SparseMatrix& a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (Index col = 0; col < a.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    const double peak = vectors.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, j)) >= peak * (1.0 - 1e-9)) {
        if (vectors(i, j) < 0.0) vectors.col(j) *= -1.0;
        break;
      }
    }
  }
}

EigenBasis dense_smallest(const SparseMatrix& a, Index k) {
  const Index n = a.rows();
  Eigen::MatrixXd dense = Eigen::MatrixXd(a);
  // dsyevr may use all of W (length n) and ISUPPZ (length 2n) as workspace.
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, k);
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(n), dense.data(),
                                         static_cast<lapack_int>(n), 0.0, 0.0, 1, static_cast<lapack_int>(k),
                                         2.0 * LAPACKE_dlamch('S'), &found, values.data(), vectors.data(),
                                         static_cast<lapack_int>(n), support.data());
  if (info != 0 || found != k) {
    std::ostringstream msg;
    msg << "dense eigensolver failed (info " << info << ", found " << found << " of " << k << " eigenpairs)";
    throw std::runtime_error(msg.str());
  }
  return {values.head(k), std::move(vectors)};
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

// Shift-invert block subspace iteration with Rayleigh-Ritz. The block is
// wider than k so clustered or repeated eigenvalues separate quickly.
EigenBasis iterative_smallest(const SparseMatrix& a, Index k, const EigenOptions& options) {
  const Index n = a.rows();
  const Index block = std::min(n, std::max<Index>(2 * k, k + 8));
  const double norm = inf_norm(a);
  if (norm == 0.0) return {Eigen::VectorXd::Zero(k), Eigen::MatrixXd::Identity(n, k)};

  const double shift = 1e-6 * norm;
  SparseMatrix shifted = a;
  for (Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
  if (factor.info() != Eigen::Success) throw std::runtime_error("sparse factorization of shifted matrix failed");

  std::mt19937_64 rng(0x5eed);
  Eigen::MatrixXd x(n, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  x = orthonormal_columns(x);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::MatrixXd q = orthonormal_columns(factor.solve(x));
    const Eigen::MatrixXd aq = a * q;
    const Eigen::MatrixXd h = q.transpose() * aq;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (h + h.transpose()));
    x = q * ritz.eigenvectors();
    const Eigen::MatrixXd ax = aq * ritz.eigenvectors();

    bool converged = true;
    for (Index j = 0; j < k && converged; ++j)
      converged = (ax.col(j) - ritz.eigenvalues()[j] * x.col(j)).norm() <= options.tolerance * norm;
    if (converged) return {ritz.eigenvalues().head(k), x.leftCols(k)};
  }
  std::ostringstream msg;
  msg << "subspace iteration did not converge in " << options.max_iterations << " iterations";
  throw std::runtime_error(msg.str());
}

}  // namespace

EigenBasis smallest_eigenpairs(const SparseMatrix& matrix, Index k, const EigenOptions& options) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("matrix must be square");
  if (k < 1 || k > matrix.rows()) {
    std::ostringstream msg;
    msg << "requested " << k << " eigenpairs of a " << matrix.rows() << " x " << matrix.rows() << " matrix";
    throw std::invalid_argument(msg.str());
  }
  EigenBasis basis = matrix.rows() <= options.dense_cutoff ? dense_smallest(matrix, k)
                                                           : iterative_smallest(matrix, k, options);
  fix_signs(basis.vectors);
  return basis;
}

EigenBasis smallest_eigenpairs(const NormalizedLaplacian& lt, Index k, const EigenOptions& options) {
  return smallest_eigenpairs(lt.values, k, options);
}

}  // namespace flowlap
