#include "lswave/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lswave {

namespace {

constexpr std::array<std::array<double, 2>, 3> kRefVertex = {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};

/// Physical gradients of all local basis functions at one quadrature point.
void physical_gradients(const AffineMap& map, const BasisValues& basis,
                        std::vector<std::array<double, 2>>& out) {
  out.resize(basis.gradients.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = map.push_gradient(basis.gradients[i]);
}

struct EdgeTabulation {
  std::vector<BasisValues> basis;  // at the line rule points along the edge
};

std::array<EdgeTabulation, 3> tabulate_edges(int p, const LineRule& rule) {
  std::array<EdgeTabulation, 3> tabs;
  for (int k = 0; k < 3; ++k) {
    const auto& a = kRefVertex[static_cast<std::size_t>((k + 1) % 3)];
    const auto& b = kRefVertex[static_cast<std::size_t>((k + 2) % 3)];
    std::vector<std::array<double, 2>> pts;
    for (double s : rule.points) pts.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
    tabs[static_cast<std::size_t>(k)].basis = tabulate(p, pts);
  }
  return tabs;
}

bool on_initial_face(const Mesh& mesh, std::size_t element, int k) {
  const auto e = local_edge(mesh.element(element), k);
  return std::abs(mesh.vertex(e[0]).t) <= 1e-14 && std::abs(mesh.vertex(e[1]).t) <= 1e-14;
}

void add_element_kernel(const AffineMap& map, double weight_scale, const QuadratureRule& quad,
                        const std::vector<BasisValues>& tab, DenseMatrix& k_local) {
  const std::size_t n = tab.front().values.size();
  std::vector<std::array<double, 2>> grad;
  std::vector<double> r1(2 * n), r2(2 * n);
  for (std::size_t q = 0; q < quad.weights.size(); ++q) {
    physical_gradients(map, tab[q], grad);
    for (std::size_t i = 0; i < n; ++i) {
      // v-basis: residuals (dt phi, -dx phi); sigma-basis: (-dx phi, dt phi).
      r1[i] = grad[i][0];
      r2[i] = -grad[i][1];
      r1[n + i] = -grad[i][1];
      r2[n + i] = grad[i][0];
    }
    const double w = quad.weights[q] * weight_scale;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      for (std::size_t j = i; j < 2 * n; ++j) {
        k_local(i, j) += w * (r1[i] * r1[j] + r2[i] * r2[j]);
      }
    }
  }
}

void add_trace_kernel(double length, const LineRule& rule, const EdgeTabulation& tab,
                      DenseMatrix& k_local) {
  const std::size_t n = tab.basis.front().values.size();
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& phi = tab.basis[q].values;
    const double w = rule.weights[q] * length;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double m = w * phi[i] * phi[j];
        k_local(i, j) += m;
        k_local(n + i, n + j) += m;
      }
    }
  }
}

void symmetrize_upper(DenseMatrix& k) {
  for (std::size_t i = 0; i < k.rows; ++i) {
    for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
  }
}

void check_spaces(const FeSpace& space_v, const FeSpace& space_sigma) {
  if (&space_v.mesh() != &space_sigma.mesh()) {
    throw std::invalid_argument("assemble: v and sigma spaces live on different meshes");
  }
  if (space_v.order() != space_sigma.order()) {
    throw std::invalid_argument("assemble: v and sigma spaces have different orders");
  }
}

/// Local load of element `e` over the local pairs (v-basis first).
void element_load(const FeSpace& space, std::size_t e, const ProblemData& problem,
                  const DataQuadrature& quad, const std::vector<BasisValues>& vol_tab,
                  const std::array<EdgeTabulation, 3>& edge_tab, std::vector<double>& load) {
  const Mesh& mesh = space.mesh();
  const auto geom = mesh.geometry(e);
  const std::size_t n = local_dofs(space.order());
  load.assign(2 * n, 0.0);
  std::vector<std::array<double, 2>> grad;
  for (std::size_t q = 0; q < quad.volume.weights.size(); ++q) {
    const auto& uw = quad.volume.points[q];
    const Point pt = geom.map(uw[0], uw[1]);
    const double f = problem.f(pt);
    const double g = problem.g(pt);
    if (f == 0.0 && g == 0.0) continue;
    physical_gradients(geom.map, vol_tab[q], grad);
    const double w = quad.volume.weights[q] * geom.map.det;
    for (std::size_t i = 0; i < n; ++i) {
      load[i] += w * (f * grad[i][0] - g * grad[i][1]);
      load[n + i] += w * (-f * grad[i][1] + g * grad[i][0]);
    }
  }
  const int k = mesh.initial_edge(e);
  if (k < 0) return;
  const auto ends = local_edge(mesh.element(e), k);
  const Point& a = mesh.vertex(ends[0]);
  const Point& b = mesh.vertex(ends[1]);
  const double length = std::abs(b.x - a.x);
  const auto& tab = edge_tab[static_cast<std::size_t>(k)];
  for (std::size_t q = 0; q < quad.line.weights.size(); ++q) {
    const double x = a.x + quad.line.points[q] * (b.x - a.x);
    const double w = quad.line.weights[q] * length;
    const double v0 = problem.v0(x);
    const double s0 = problem.sigma0(x);
    const auto& phi = tab.basis[q].values;
    for (std::size_t i = 0; i < n; ++i) {
      load[i] += w * v0 * phi[i];
      load[n + i] += w * s0 * phi[i];
    }
  }
}

}  // namespace

DataQuadrature data_quadrature(int p, const ProblemData& problem, int order_override) {
  DataQuadrature dq;
  dq.order = order_override > 0 ? order_override : std::max(2 * p, 6);
  if (dq.order < 2 * p || dq.order > kMaxQuadratureOrder) {
    throw std::invalid_argument("data quadrature order " + std::to_string(dq.order) +
                                " outside [" + std::to_string(2 * p) + ", " +
                                std::to_string(kMaxQuadratureOrder) + "]");
  }
  dq.depth = problem.sharp ? kCompositeDepth : 0;
  dq.volume = composite_rule(dq.order, dq.depth);
  dq.line = line_rule(dq.order, problem.sharp ? kTraceCompositeDepth : 0);
  return dq;
}

DenseMatrix element_matrix(const ElementGeometry& geom, int p, const QuadratureRule& quad) {
  const auto tab = tabulate(p, quad.points);
  const std::size_t n = local_dofs(p);
  DenseMatrix k(2 * n, 2 * n);
  add_element_kernel(geom.map, geom.map.det, quad, tab, k);
  symmetrize_upper(k);
  return k;
}

DenseMatrix initial_trace_matrix(const Mesh& mesh, std::size_t element, int local_edge_id,
                                 int p, const LineRule& rule) {
  if (local_edge_id < 0 || local_edge_id > 2 || !on_initial_face(mesh, element, local_edge_id)) {
    throw std::invalid_argument("initial_trace_matrix: edge " + std::to_string(local_edge_id) +
                                " of element " + std::to_string(element) +
                                " is not on the t = 0 face");
  }
  const auto tabs = tabulate_edges(p, rule);
  const auto ends = local_edge(mesh.element(element), local_edge_id);
  const double length = std::abs(mesh.vertex(ends[1]).x - mesh.vertex(ends[0]).x);
  const std::size_t n = local_dofs(p);
  DenseMatrix k(2 * n, 2 * n);
  add_trace_kernel(length, rule, tabs[static_cast<std::size_t>(local_edge_id)], k);
  symmetrize_upper(k);
  return k;
}

BlockLayout make_layout(const FeSpace& space_v, const FeSpace& space_sigma) {
  BlockLayout layout;
  layout.v_index.assign(space_v.n_dofs(), -1);
  layout.sigma_index.assign(space_sigma.n_dofs(), -1);
  long row = 0;
  for (std::size_t i = 0; i < space_v.n_dofs(); ++i) {
    if (!space_v.is_constrained(i)) layout.v_index[i] = row++;
  }
  layout.n_v = static_cast<std::size_t>(row);
  for (std::size_t i = 0; i < space_sigma.n_dofs(); ++i) {
    if (!space_sigma.is_constrained(i)) layout.sigma_index[i] = row++;
  }
  layout.n_sigma = static_cast<std::size_t>(row) - layout.n_v;
  return layout;
}

DiscreteSolution expand(const BlockLayout& layout, std::span<const double> x) {
  if (x.size() != layout.size()) throw std::invalid_argument("expand: length mismatch");
  DiscreteSolution u;
  u.v.assign(layout.v_index.size(), 0.0);
  u.sigma.assign(layout.sigma_index.size(), 0.0);
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    if (layout.v_index[i] >= 0) u.v[i] = x[static_cast<std::size_t>(layout.v_index[i])];
  }
  for (std::size_t i = 0; i < u.sigma.size(); ++i) {
    if (layout.sigma_index[i] >= 0) u.sigma[i] = x[static_cast<std::size_t>(layout.sigma_index[i])];
  }
  return u;
}

std::vector<double> restrict_to_free(const BlockLayout& layout, const DiscreteSolution& u) {
  std::vector<double> x(layout.size(), 0.0);
  for (std::size_t i = 0; i < layout.v_index.size(); ++i) {
    if (layout.v_index[i] >= 0) x[static_cast<std::size_t>(layout.v_index[i])] = u.v[i];
  }
  for (std::size_t i = 0; i < layout.sigma_index.size(); ++i) {
    if (layout.sigma_index[i] >= 0) x[static_cast<std::size_t>(layout.sigma_index[i])] = u.sigma[i];
  }
  return x;
}

std::vector<double> assemble_load(const FeSpace& space_v, const FeSpace& space_sigma,
                                  const BlockLayout& layout, const ProblemData& problem,
                                  const DataQuadrature& quad) {
  check_spaces(space_v, space_sigma);
  const int p = space_v.order();
  const std::size_t n = local_dofs(p);
  const auto vol_tab = tabulate(p, quad.volume.points);
  const auto edge_tab = tabulate_edges(p, quad.line);
  std::vector<double> rhs(layout.size(), 0.0);
  std::vector<double> load;
  for (std::size_t e = 0; e < space_v.mesh().num_elements(); ++e) {
    element_load(space_v, e, problem, quad, vol_tab, edge_tab, load);
    const auto dofs = space_v.element_dofs(e);
    for (std::size_t i = 0; i < n; ++i) {
      const long rv = layout.v_index[dofs[i]];
      if (rv >= 0) rhs[static_cast<std::size_t>(rv)] += load[i];
      const long rs = layout.sigma_index[dofs[i]];
      if (rs >= 0) rhs[static_cast<std::size_t>(rs)] += load[n + i];
    }
  }
  return rhs;
}

SparseSystem assemble(const FeSpace& space_v, const FeSpace& space_sigma,
                      const ProblemData& problem, const DataQuadrature& quad) {
  check_spaces(space_v, space_sigma);
  const Mesh& mesh = space_v.mesh();
  const int p = space_v.order();
  const std::size_t n = local_dofs(p);

  SparseSystem sys;
  sys.layout = make_layout(space_v, space_sigma);
  const auto& layout = sys.layout;

  auto local_rows = [&](std::size_t e, std::vector<long>& rows) {
    const auto dofs = space_v.element_dofs(e);
    rows.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i] = layout.v_index[dofs[i]];
      rows[n + i] = layout.sigma_index[dofs[i]];
    }
  };

  std::vector<long> rows;
  {
    std::vector<std::vector<std::size_t>> pattern(layout.size());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
      local_rows(e, rows);
      for (long r : rows) {
        if (r < 0) continue;
        auto& row = pattern[static_cast<std::size_t>(r)];
        for (long c : rows) {
          if (c >= 0) row.push_back(static_cast<std::size_t>(c));
        }
      }
    }
    sys.matrix = make_pattern(std::move(pattern));
  }

  const QuadratureRule stiff_quad = quadrature_rule(2 * p);
  const auto stiff_tab = tabulate(p, stiff_quad.points);
  const LineRule trace_rule = line_rule(2 * p);
  const auto trace_tab = tabulate_edges(p, trace_rule);

  DenseMatrix k_local(2 * n, 2 * n);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto geom = mesh.geometry(e);
    std::fill(k_local.data.begin(), k_local.data.end(), 0.0);
    add_element_kernel(geom.map, geom.map.det, stiff_quad, stiff_tab, k_local);
    const int k = mesh.initial_edge(e);
    if (k >= 0) {
      const auto ends = local_edge(mesh.element(e), k);
      const double length = std::abs(mesh.vertex(ends[1]).x - mesh.vertex(ends[0]).x);
      add_trace_kernel(length, trace_rule, trace_tab[static_cast<std::size_t>(k)], k_local);
    }
    symmetrize_upper(k_local);

    local_rows(e, rows);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (rows[i] < 0) continue;
      const auto r = static_cast<std::size_t>(rows[i]);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (rows[j] < 0) continue;
        sys.matrix.val[sys.matrix.find(r, static_cast<std::size_t>(rows[j]))] += k_local(i, j);
      }
    }
  }

  sys.rhs = assemble_load(space_v, space_sigma, layout, problem, quad);
  return sys;
}

}  // namespace lswave
