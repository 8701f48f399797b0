#include "lswave/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>

namespace lswave {

namespace {

double relative_residual(const CsrMatrix& a, std::span<const double> x,
                         std::span<const double> b, double b_norm) {
  std::vector<double> r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r) / b_norm;
}

SolveReport dense_cholesky(const CsrMatrix& a, std::span<const double> b, double b_norm) {
  if (a.n > kDenseLimit) {
    throw std::invalid_argument("dense Cholesky limited to " + std::to_string(kDenseLimit) +
                                " unknowns, got " + std::to_string(a.n));
  }
  const auto n = static_cast<Eigen::Index>(a.n);
  const std::vector<double> dense = a.to_dense();
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      mat(dense.data(), n, n);
  const Eigen::LLT<Eigen::MatrixXd> llt(mat);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("dense Cholesky: matrix not positive definite");
  }
  const Eigen::VectorXd x = llt.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  SolveReport report;
  report.method = SolveMethod::DenseCholesky;
  report.solution.assign(x.data(), x.data() + x.size());
  report.relative_residual = relative_residual(a, report.solution, b, b_norm);
  return report;
}

}  // namespace

SolveReport solve_spd(const CsrMatrix& a, std::span<const double> b, const SolveOptions& options) {
  if (b.size() != a.n) throw std::invalid_argument("solve_spd: rhs length mismatch");
  if (!(options.rel_tol > 0.0 && options.rel_tol < 1.0)) {
    throw std::invalid_argument("solve_spd: rel_tol must lie in (0,1)");
  }
  const std::size_t n = a.n;
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a.at(i, i);
    if (!(d > 0.0)) {
      throw std::runtime_error("solve_spd: non-positive diagonal entry at row " +
                               std::to_string(i) + " (broken assembly)");
    }
    inv_diag[i] = 1.0 / d;
  }

  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    SolveReport report;
    report.method = options.method;
    report.solution.assign(n, 0.0);
    return report;
  }
  if (options.method == SolveMethod::DenseCholesky) return dense_cholesky(a, b, b_norm);

  const std::size_t max_iter = options.max_iter > 0 ? options.max_iter : 20 * n;
  std::vector<double> x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double res = 1.0;
  std::size_t it = 0;
  while (it < max_iter) {
    a.multiply(p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++it;
    res = norm2(r) / b_norm;
    if (res <= options.rel_tol) {
      // The recursive residual drifts; confirm against the true one.
      res = relative_residual(a, x, b, b_norm);
      if (res <= options.rel_tol) break;
      a.multiply(x, r);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
      p = z;
      rz = dot(r, z);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (res > options.rel_tol) {
    throw SolverError("CG did not reach relative residual " + std::to_string(options.rel_tol) +
                          " in " + std::to_string(it) + " iterations (residual " +
                          std::to_string(res) + ")",
                      it, res);
  }
  SolveReport report;
  report.solution = std::move(x);
  report.iterations = it;
  report.relative_residual = res;
  return report;
}

}  // namespace lswave
