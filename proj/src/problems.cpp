#include "lswave/problems.hpp"

#include <cmath>
#include <numbers>

namespace lswave {

namespace {

constexpr double kPi = std::numbers::pi;

/// Which of T1..T4 contains (t,x); closed triangles tested in order T1..T4.
int jump_region(const Point& p) {
  // T1 touches x = 0, T2 touches t = 1, T3 touches x = 1, T4 touches t = 0.
  if (p.x <= p.t && p.x <= 1.0 - p.t) return 1;
  if (p.t >= p.x && p.t >= 1.0 - p.x) return 2;
  if (p.x >= p.t && p.x >= 1.0 - p.t) return 3;
  return 4;
}

}  // namespace

ProblemData smooth1d() {
  ProblemData d;
  d.name = "smooth1d";
  d.f = [](const Point& p) {
    return std::sin(kPi * p.x) * (1.0 + 0.5 * kPi * kPi * p.t * p.t);
  };
  d.g = [](const Point&) { return 0.0; };
  d.v0 = [](double) { return 0.0; };
  d.sigma0 = [](double) { return 0.0; };
  ExactSolution ex;
  ex.v = [](const Point& p) { return p.t * std::sin(kPi * p.x); };
  ex.sigma = [](const Point& p) { return 0.5 * kPi * p.t * p.t * std::cos(kPi * p.x); };
  ex.grad_v = [](const Point& p) -> std::array<double, 2> {
    return {std::sin(kPi * p.x), kPi * p.t * std::cos(kPi * p.x)};
  };
  ex.grad_sigma = [](const Point& p) -> std::array<double, 2> {
    return {kPi * p.t * std::cos(kPi * p.x), -0.5 * kPi * kPi * p.t * p.t * std::sin(kPi * p.x)};
  };
  d.exact = std::move(ex);
  return d;
}

ProblemData pulse1d() {
  constexpr double kappa = 1000.0;
  constexpr double mu = 0.2;
  ProblemData d;
  d.name = "pulse1d";
  d.f = [](const Point&) { return 0.0; };
  d.g = [](const Point&) { return 0.0; };
  d.v0 = [](double x) {
    const double s = x - mu;
    return 2.0 * kappa * s * std::exp(-kappa * s * s);
  };
  d.sigma0 = [v0 = d.v0](double x) { return -v0(x); };
  d.sharp = true;
  return d;
}

ProblemData jump1d() {
  ProblemData d;
  d.name = "jump1d";
  d.f = [](const Point&) { return 0.0; };
  d.g = [](const Point&) { return 0.0; };
  d.v0 = [](double) { return 1.0; };
  d.sigma0 = [](double) { return 0.0; };
  ExactSolution ex;
  ex.v = [](const Point& p) {
    switch (jump_region(p)) {
      case 2: return -1.0;
      case 4: return 1.0;
      default: return 0.0;
    }
  };
  ex.sigma = [](const Point& p) {
    switch (jump_region(p)) {
      case 1: return 1.0;
      case 3: return -1.0;
      default: return 0.0;
    }
  };
  ex.grad_v = [](const Point&) -> std::array<double, 2> { return {0.0, 0.0}; };
  ex.grad_sigma = ex.grad_v;
  d.exact = std::move(ex);
  d.rough_exact = true;
  return d;
}

ProblemData make_problem(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::Smooth1D: return smooth1d();
    case BenchmarkId::Pulse1D: return pulse1d();
    case BenchmarkId::Jump1D: return jump1d();
  }
  return smooth1d();
}

std::optional<BenchmarkId> parse_benchmark(std::string_view name) {
  if (name == "smooth1d") return BenchmarkId::Smooth1D;
  if (name == "pulse1d") return BenchmarkId::Pulse1D;
  if (name == "jump1d") return BenchmarkId::Jump1D;
  return std::nullopt;
}

std::string_view benchmark_name(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::Smooth1D: return "smooth1d";
    case BenchmarkId::Pulse1D: return "pulse1d";
    case BenchmarkId::Jump1D: return "jump1d";
  }
  return "";
}

ProblemData patch_sigma_t() {
  ProblemData d;
  d.name = "patch_sigma_t";
  d.f = [](const Point&) { return 0.0; };
  d.g = [](const Point&) { return 1.0; };
  d.v0 = [](double) { return 0.0; };
  d.sigma0 = [](double) { return 0.0; };
  ExactSolution ex;
  ex.v = [](const Point&) { return 0.0; };
  ex.sigma = [](const Point& p) { return p.t; };
  ex.grad_v = [](const Point&) -> std::array<double, 2> { return {0.0, 0.0}; };
  ex.grad_sigma = [](const Point&) -> std::array<double, 2> { return {1.0, 0.0}; };
  d.exact = std::move(ex);
  return d;
}

ProblemData patch_sigma_x() {
  ProblemData d;
  d.name = "patch_sigma_x";
  d.f = [](const Point&) { return -1.0; };
  d.g = [](const Point&) { return 0.0; };
  d.v0 = [](double) { return 0.0; };
  d.sigma0 = [](double x) { return x; };
  ExactSolution ex;
  ex.v = [](const Point&) { return 0.0; };
  ex.sigma = [](const Point& p) { return p.x; };
  ex.grad_v = [](const Point&) -> std::array<double, 2> { return {0.0, 0.0}; };
  ex.grad_sigma = [](const Point&) -> std::array<double, 2> { return {0.0, 1.0}; };
  d.exact = std::move(ex);
  return d;
}

ProblemData zero_problem() {
  ProblemData d;
  d.name = "zero";
  d.f = [](const Point&) { return 0.0; };
  d.g = [](const Point&) { return 0.0; };
  d.v0 = [](double) { return 0.0; };
  d.sigma0 = [](double) { return 0.0; };
  return d;
}

}  // namespace lswave
