#include "lswave/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lswave {

namespace {

constexpr std::array<std::array<double, 2>, 3> kRefVertex = {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};

struct LocalField {
  double value = 0.0;
  std::array<double, 2> grad{};  // physical
};

LocalField combine(const AffineMap& map, const BasisValues& basis,
                   std::span<const std::size_t> dofs, std::span<const double> coeffs) {
  LocalField out;
  std::array<double, 2> ref{0.0, 0.0};
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const double c = coeffs[dofs[i]];
    out.value += c * basis.values[i];
    ref[0] += c * basis.gradients[i][0];
    ref[1] += c * basis.gradients[i][1];
  }
  out.grad = map.push_gradient(ref);
  return out;
}

/// Basis at the line-rule points of each local edge of the reference triangle.
std::array<std::vector<BasisValues>, 3> edge_tables(int p, const LineRule& rule) {
  std::array<std::vector<BasisValues>, 3> tabs;
  for (int k = 0; k < 3; ++k) {
    const auto& a = kRefVertex[static_cast<std::size_t>((k + 1) % 3)];
    const auto& b = kRefVertex[static_cast<std::size_t>((k + 2) % 3)];
    std::vector<std::array<double, 2>> pts;
    for (double s : rule.points) pts.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
    tabs[static_cast<std::size_t>(k)] = tabulate(p, pts);
  }
  return tabs;
}

void check_inputs(const FeSpace& space_v, const FeSpace& space_sigma, const DiscreteSolution& u) {
  if (&space_v.mesh() != &space_sigma.mesh() || space_v.order() != space_sigma.order()) {
    throw std::invalid_argument("estimator: incompatible v and sigma spaces");
  }
  if (u.v.size() != space_v.n_dofs() || u.sigma.size() != space_sigma.n_dofs()) {
    throw std::invalid_argument("estimator: coefficient vectors do not match the spaces");
  }
}

}  // namespace

double IndicatorField::interior_total() const {
  return std::accumulate(interior_sq.begin(), interior_sq.end(), 0.0);
}

double IndicatorField::trace_total() const {
  return std::accumulate(trace_sq.begin(), trace_sq.end(), 0.0);
}

IndicatorField compute_indicators(const FeSpace& space_v, const FeSpace& space_sigma,
                                  const DiscreteSolution& u, const ProblemData& problem,
                                  const DataQuadrature& quad) {
  check_inputs(space_v, space_sigma, u);
  const Mesh& mesh = space_v.mesh();
  const int p = space_v.order();
  const auto vol_tab = tabulate(p, quad.volume.points);
  const auto edge_tab = edge_tables(p, quad.line);

  IndicatorField ind;
  const std::size_t ne = mesh.num_elements();
  ind.eta_sq.assign(ne, 0.0);
  ind.interior_sq.assign(ne, 0.0);
  ind.trace_sq.assign(ne, 0.0);

  for (std::size_t e = 0; e < ne; ++e) {
    const auto geom = mesh.geometry(e);
    const auto dofs = space_v.element_dofs(e);
    double interior = 0.0;
    for (std::size_t q = 0; q < quad.volume.weights.size(); ++q) {
      const auto& uw = quad.volume.points[q];
      const Point pt = geom.map(uw[0], uw[1]);
      const auto v = combine(geom.map, vol_tab[q], dofs, u.v);
      const auto s = combine(geom.map, vol_tab[q], dofs, u.sigma);
      const double r1 = v.grad[0] - s.grad[1] - problem.f(pt);
      const double r2 = s.grad[0] - v.grad[1] - problem.g(pt);
      interior += quad.volume.weights[q] * geom.map.det * (r1 * r1 + r2 * r2);
    }
    double trace = 0.0;
    const int k = mesh.initial_edge(e);
    if (k >= 0) {
      const auto ends = local_edge(mesh.element(e), k);
      const Point& a = mesh.vertex(ends[0]);
      const Point& b = mesh.vertex(ends[1]);
      const double length = std::abs(b.x - a.x);
      const auto& tab = edge_tab[static_cast<std::size_t>(k)];
      for (std::size_t q = 0; q < quad.line.weights.size(); ++q) {
        const double x = a.x + quad.line.points[q] * (b.x - a.x);
        const auto v = combine(geom.map, tab[q], dofs, u.v);
        const auto s = combine(geom.map, tab[q], dofs, u.sigma);
        const double dv = v.value - problem.v0(x);
        const double ds = s.value - problem.sigma0(x);
        trace += quad.line.weights[q] * length * (dv * dv + ds * ds);
      }
    }
    ind.interior_sq[e] = interior;
    ind.trace_sq[e] = trace;
    ind.eta_sq[e] = interior + trace;
  }
  ind.eta = std::sqrt(std::accumulate(ind.eta_sq.begin(), ind.eta_sq.end(), 0.0));
  return ind;
}

double data_norm_sq(const Mesh& mesh, const ProblemData& problem, const DataQuadrature& quad) {
  double total = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto geom = mesh.geometry(e);
    for (std::size_t q = 0; q < quad.volume.weights.size(); ++q) {
      const auto& uw = quad.volume.points[q];
      const Point pt = geom.map(uw[0], uw[1]);
      const double f = problem.f(pt);
      const double g = problem.g(pt);
      total += quad.volume.weights[q] * geom.map.det * (f * f + g * g);
    }
    const int k = mesh.initial_edge(e);
    if (k < 0) continue;
    const auto ends = local_edge(mesh.element(e), k);
    const Point& a = mesh.vertex(ends[0]);
    const Point& b = mesh.vertex(ends[1]);
    const double length = std::abs(b.x - a.x);
    for (std::size_t q = 0; q < quad.line.weights.size(); ++q) {
      const double x = a.x + quad.line.points[q] * (b.x - a.x);
      const double v0 = problem.v0(x);
      const double s0 = problem.sigma0(x);
      total += quad.line.weights[q] * length * (v0 * v0 + s0 * s0);
    }
  }
  return total;
}

ErrorReport compute_errors(const FeSpace& space_v, const FeSpace& space_sigma,
                           const DiscreteSolution& u, const ProblemData& problem,
                           const DataQuadrature& quad, const IndicatorField& indicators) {
  if (!problem.exact) {
    throw std::invalid_argument("compute_errors: problem '" + problem.name +
                                "' has no exact solution");
  }
  check_inputs(space_v, space_sigma, u);
  const auto& exact = *problem.exact;
  const Mesh& mesh = space_v.mesh();
  const int p = space_v.order();
  // A discontinuous exact solution gains nothing from high order; resolve the
  // jumps by subdivision instead.
  const int order = problem.rough_exact ? 2 * p + 2 : std::min(quad.order + 2, kMaxQuadratureOrder);
  const int depth = problem.rough_exact ? kCompositeDepth : quad.depth;
  const QuadratureRule rule = composite_rule(order, depth);
  const LineRule line = line_rule(order, depth);
  const auto vol_tab = tabulate(p, rule.points);
  const auto edge_tab = edge_tables(p, line);

  double ev = 0.0, es = 0.0, et = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto geom = mesh.geometry(e);
    const auto dofs = space_v.element_dofs(e);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& uw = rule.points[q];
      const Point pt = geom.map(uw[0], uw[1]);
      const auto v = combine(geom.map, vol_tab[q], dofs, u.v);
      const auto s = combine(geom.map, vol_tab[q], dofs, u.sigma);
      const double dv = v.value - exact.v(pt);
      const double ds = s.value - exact.sigma(pt);
      const double w = rule.weights[q] * geom.map.det;
      ev += w * dv * dv;
      es += w * ds * ds;
    }
    const int k = mesh.initial_edge(e);
    if (k < 0) continue;
    const auto ends = local_edge(mesh.element(e), k);
    const Point& a = mesh.vertex(ends[0]);
    const Point& b = mesh.vertex(ends[1]);
    const double length = std::abs(b.x - a.x);
    const auto& tab = edge_tab[static_cast<std::size_t>(k)];
    for (std::size_t q = 0; q < line.weights.size(); ++q) {
      const Point pt{0.0, a.x + line.points[q] * (b.x - a.x)};
      const auto v = combine(geom.map, tab[q], dofs, u.v);
      const auto s = combine(geom.map, tab[q], dofs, u.sigma);
      const double dv = v.value - exact.v(pt);
      const double ds = s.value - exact.sigma(pt);
      et += line.weights[q] * length * (dv * dv + ds * ds);
    }
  }
  ErrorReport rep;
  rep.err_v_L2 = std::sqrt(ev);
  rep.err_sigma_L2 = std::sqrt(es);
  rep.err_trace0 = std::sqrt(et);
  rep.err_V = std::sqrt(ev + es + indicators.interior_total() + et);
  rep.eta = indicators.eta;
  return rep;
}

}  // namespace lswave
