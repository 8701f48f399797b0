#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "lswave/mesh.hpp"

namespace lswave {

using SpaceTimeField = std::function<double(const Point&)>;
using SpaceTimeGradient = std::function<std::array<double, 2>(const Point&)>;
using InitialField = std::function<double(double x)>;

/// Exact pair (v, sigma); gradients are (d/dt, d/dx).
struct ExactSolution {
  SpaceTimeField v;
  SpaceTimeField sigma;
  SpaceTimeGradient grad_v;
  SpaceTimeGradient grad_sigma;
};

/// Right-hand side of the first-order system
///   dt v - dx sigma = f,  dt sigma - dx v = g,  v(0) = v0,  sigma(0) = sigma0
/// with v = 0 on the lateral boundary x in {0,1}.
struct ProblemData {
  std::string name;
  SpaceTimeField f;
  SpaceTimeField g;
  InitialField v0;
  InitialField sigma0;
  std::optional<ExactSolution> exact;
  /// Data not resolved by plain element quadrature on coarse meshes;
  /// switches data integrals to composite rules.
  bool sharp = false;
  /// Exact solution with jumps across element interiors; switches exact-error
  /// integrals to composite rules.
  bool rough_exact = false;
};

enum class BenchmarkId { Smooth1D, Pulse1D, Jump1D };

/// u = t^2 sin(pi x) / 2, v = dt u, sigma = dx u.
ProblemData smooth1d();

/// Gaussian pulse v0 = 2 kappa (x - mu) exp(-kappa (x - mu)^2), sigma0 = -v0,
/// kappa = 1000, mu = 0.2. No exact solution.
ProblemData pulse1d();

/// v0 = 1 against the lateral condition; the exact pair is piecewise constant
/// on the four triangles cut out of Q by its diagonals.
ProblemData jump1d();

ProblemData make_problem(BenchmarkId id);

/// Parses smooth1d|pulse1d|jump1d.
std::optional<BenchmarkId> parse_benchmark(std::string_view name);
std::string_view benchmark_name(BenchmarkId id);

/// Polynomial pairs contained in every discrete space: (v, sigma) = (0, t)
/// with data (0, 1, 0, 0) and (v, sigma) = (0, x) with data (-1, 0, 0, x).
ProblemData patch_sigma_t();
ProblemData patch_sigma_x();

/// All data zero.
ProblemData zero_problem();

}  // namespace lswave
