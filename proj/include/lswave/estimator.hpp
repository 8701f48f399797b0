#pragma once

#include <cstddef>
#include <vector>

#include "lswave/assembly.hpp"
#include "lswave/fem.hpp"
#include "lswave/problems.hpp"

namespace lswave {

/// Element indicators eta_T^2: squared L2(T) norms of the two residuals
///   dt v - dx sigma - f,   dt sigma - dx v - g
/// plus, on elements with an edge on t = 0, the squared trace misfits
/// v(0) - v0 and sigma(0) - sigma0 over that edge.
struct IndicatorField {
  std::vector<double> eta_sq;
  std::vector<double> interior_sq;  // residual part of eta_sq
  std::vector<double> trace_sq;     // initial-trace part of eta_sq
  double eta = 0.0;                 // sqrt of the sum of eta_sq

  double interior_total() const;
  double trace_total() const;
};

IndicatorField compute_indicators(const FeSpace& space_v, const FeSpace& space_sigma,
                                  const DiscreteSolution& u, const ProblemData& problem,
                                  const DataQuadrature& quad);

/// ||f||^2_Q + ||g||^2_Q + ||v0||^2 + ||sigma0||^2 with the same rules as the
/// load vector.
double data_norm_sq(const Mesh& mesh, const ProblemData& problem, const DataQuadrature& quad);

struct ErrorReport {
  double err_v_L2 = 0.0;
  double err_sigma_L2 = 0.0;
  double err_trace0 = 0.0;  // L2(0,1) error of (v, sigma) at t = 0
  double err_V = 0.0;       // graph-norm error
  double eta = 0.0;
};

/// Errors against problem.exact. The graph-norm error combines the L2 field
/// errors, the interior residual part of the estimator and the t = 0 trace
/// error. Throws std::invalid_argument when the problem has no exact solution.
ErrorReport compute_errors(const FeSpace& space_v, const FeSpace& space_sigma,
                           const DiscreteSolution& u, const ProblemData& problem,
                           const DataQuadrature& quad, const IndicatorField& indicators);

}  // namespace lswave
