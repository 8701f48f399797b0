#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lswave/fem.hpp"

namespace lswave {

LineRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  LineRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = 0.5 * (1.0 - z);
    rule.points[hi] = 0.5 * (1.0 + z);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

LineRule line_rule(int order, int depth) {
  const LineRule base = gauss_legendre(std::max(1, (order + 2) / 2));
  if (depth <= 0) return base;
  const int pieces = 1 << depth;
  LineRule rule;
  for (int s = 0; s < pieces; ++s) {
    for (std::size_t q = 0; q < base.points.size(); ++q) {
      rule.points.push_back((s + base.points[q]) / pieces);
      rule.weights.push_back(base.weights[q] / pieces);
    }
  }
  return rule;
}

QuadratureRule quadrature_rule(int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw std::invalid_argument("quadrature_rule: order " + std::to_string(order) +
                                " outside [1, " + std::to_string(kMaxQuadratureOrder) +
                                "]");
  }
  QuadratureRule rule;
  rule.order = order;
  if (order == 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    return rule;
  }
  if (order == 2) {
    rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  // Collapsed (Duffy) product of Gauss-Legendre rules:
  // int_ref f = int_0^1 int_0^1 f(s, (1-s) r) (1-s) dr ds.
  // The s-integrand has degree order+1, the r-integrand degree order.
  const LineRule gs = gauss_legendre((order + 3) / 2);
  const LineRule gr = gauss_legendre((order + 2) / 2);
  for (std::size_t i = 0; i < gs.points.size(); ++i) {
    const double s = gs.points[i];
    for (std::size_t j = 0; j < gr.points.size(); ++j) {
      const double r = gr.points[j];
      rule.points.push_back({s, (1.0 - s) * r});
      rule.weights.push_back(gs.weights[i] * gr.weights[j] * (1.0 - s));
    }
  }
  return rule;
}

QuadratureRule composite_rule(int order, int depth) {
  QuadratureRule rule = quadrature_rule(order);
  for (int level = 0; level < depth; ++level) {
    // Split into the three corner triangles and the flipped middle one.
    QuadratureRule next;
    next.order = rule.order;
    const std::array<std::array<double, 2>, 3> corners = {{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto [u, w] = rule.points[q];
      for (const auto& c : corners) {
        next.points.push_back({c[0] + 0.5 * u, c[1] + 0.5 * w});
        next.weights.push_back(0.25 * rule.weights[q]);
      }
      next.points.push_back({0.5 - 0.5 * u, 0.5 - 0.5 * w});
      next.weights.push_back(0.25 * rule.weights[q]);
    }
    rule = std::move(next);
  }
  return rule;
}

}  // namespace lswave
