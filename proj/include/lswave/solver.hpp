#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lswave/assembly.hpp"
#include "lswave/sparse.hpp"

namespace lswave {

enum class SolveMethod { ConjugateGradient, DenseCholesky };

struct SolveOptions {
  double rel_tol = 1e-10;
  /// 0 selects 20 * n.
  std::size_t max_iter = 0;
  SolveMethod method = SolveMethod::ConjugateGradient;
};

struct SolveReport {
  std::vector<double> solution;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  SolveMethod method = SolveMethod::ConjugateGradient;
};

/// Raised when CG misses the tolerance within max_iter.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

/// Largest system accepted by the dense Cholesky route.
inline constexpr std::size_t kDenseLimit = 500;

/// Solves A x = b for symmetric positive definite A. CG uses a Jacobi
/// preconditioner and stops on the true relative residual ||Ax-b||/||b||.
/// Throws std::runtime_error on a non-positive diagonal entry and SolverError
/// on non-convergence.
SolveReport solve_spd(const CsrMatrix& a, std::span<const double> b,
                      const SolveOptions& options = {});

inline SolveReport solve_spd(const SparseSystem& system, const SolveOptions& options = {}) {
  return solve_spd(system.matrix, system.rhs, options);
}

}  // namespace lswave
