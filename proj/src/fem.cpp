#include "lswave/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace lswave {

namespace {

using MultiIndex = std::array<int, 3>;

void check_order(int p) {
  if (p < 1 || p > 3) {
    throw std::invalid_argument("unsupported polynomial order " + std::to_string(p) +
                                " (expected 1, 2 or 3)");
  }
}

/// Barycentric multi-indices of the local nodes in local order.
std::vector<MultiIndex> node_indices(int p) {
  std::vector<MultiIndex> idx;
  for (int k = 0; k < 3; ++k) {
    MultiIndex m{0, 0, 0};
    m[static_cast<std::size_t>(k)] = p;
    idx.push_back(m);
  }
  for (int k = 0; k < 3; ++k) {
    const auto a = static_cast<std::size_t>((k + 1) % 3);
    const auto b = static_cast<std::size_t>((k + 2) % 3);
    for (int j = 1; j < p; ++j) {
      MultiIndex m{0, 0, 0};
      m[a] = p - j;
      m[b] = j;
      idx.push_back(m);
    }
  }
  if (p == 3) idx.push_back({1, 1, 1});
  return idx;
}

const std::vector<MultiIndex>& cached_indices(int p) {
  static const std::array<std::vector<MultiIndex>, 3> table = {
      node_indices(1), node_indices(2), node_indices(3)};
  return table[static_cast<std::size_t>(p - 1)];
}

/// prod_{m<i} (p*lambda - m)/(i - m) and its derivative in lambda.
std::array<double, 2> factor(int p, int i, double lambda) {
  double value = 1.0, deriv = 0.0;
  for (int m = 0; m < i; ++m) {
    const double f = (p * lambda - m) / (i - m);
    const double df = static_cast<double>(p) / (i - m);
    deriv = deriv * f + value * df;
    value *= f;
  }
  return {value, deriv};
}

constexpr std::array<std::array<double, 2>, 3> kBaryGradient = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};

std::uint64_t edge_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

std::vector<std::array<double, 2>> reference_nodes(int p) {
  check_order(p);
  std::vector<std::array<double, 2>> nodes;
  for (const auto& m : cached_indices(p)) {
    nodes.push_back({static_cast<double>(m[1]) / p, static_cast<double>(m[2]) / p});
  }
  return nodes;
}

BasisValues eval_basis(int p, std::array<double, 2> ref_point) {
  check_order(p);
  const std::array<double, 3> lambda = {1.0 - ref_point[0] - ref_point[1], ref_point[0],
                                        ref_point[1]};
  const auto& indices = cached_indices(p);
  BasisValues out;
  out.values.reserve(indices.size());
  out.gradients.reserve(indices.size());
  for (const auto& m : indices) {
    std::array<std::array<double, 2>, 3> f;
    for (std::size_t a = 0; a < 3; ++a) f[a] = factor(p, m[a], lambda[a]);
    out.values.push_back(f[0][0] * f[1][0] * f[2][0]);
    std::array<double, 2> grad{0.0, 0.0};
    for (std::size_t a = 0; a < 3; ++a) {
      const double d = f[a][1] * f[(a + 1) % 3][0] * f[(a + 2) % 3][0];
      grad[0] += d * kBaryGradient[a][0];
      grad[1] += d * kBaryGradient[a][1];
    }
    out.gradients.push_back(grad);
  }
  return out;
}

std::vector<BasisValues> tabulate(int p, std::span<const std::array<double, 2>> points) {
  std::vector<BasisValues> table;
  table.reserve(points.size());
  for (const auto& pt : points) table.push_back(eval_basis(p, pt));
  return table;
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, int p, bool constrain_lateral)
    : mesh_(std::move(mesh)), order_(p), constrain_lateral_(constrain_lateral),
      n_local_(local_dofs(p)) {
  check_order(p);
  if (!mesh_) throw std::invalid_argument("FeSpace: null mesh");
  const Mesh& m = *mesh_;
  const auto elems = m.elements();
  const auto per_edge = static_cast<std::size_t>(p - 1);

  nodes_.assign(m.vertices().begin(), m.vertices().end());

  // Edges in order of first appearance.
  std::unordered_map<std::uint64_t, std::size_t> edge_base;
  edge_base.reserve(3 * elems.size());
  for (const auto& tri : elems) {
    for (int k = 0; k < 3; ++k) {
      const auto e = local_edge(tri, k);
      if (edge_base.emplace(edge_key(e[0], e[1]), n_edges_).second) ++n_edges_;
    }
  }
  const std::size_t edge_offset = m.num_vertices();
  const std::size_t interior_offset = edge_offset + per_edge * n_edges_;
  const std::size_t per_element = p == 3 ? 1 : 0;
  nodes_.resize(interior_offset + per_element * elems.size());

  dof_map_.resize(n_local_ * elems.size());
  for (std::size_t el = 0; el < elems.size(); ++el) {
    const auto& tri = elems[el];
    std::size_t* dofs = dof_map_.data() + el * n_local_;
    std::size_t local = 0;
    for (std::size_t v : tri) dofs[local++] = v;
    for (int k = 0; k < 3; ++k) {
      const auto e = local_edge(tri, k);
      const std::size_t base =
          edge_offset + per_edge * edge_base.at(edge_key(e[0], e[1]));
      const bool forward = e[0] < e[1];
      const Point& a = m.vertex(e[0]);
      const Point& b = m.vertex(e[1]);
      for (std::size_t j = 1; j <= per_edge; ++j) {
        const std::size_t id = base + (forward ? j - 1 : per_edge - j);
        dofs[local++] = id;
        const double s = static_cast<double>(j) / p;
        nodes_[id] = {a.t + s * (b.t - a.t), a.x + s * (b.x - a.x)};
      }
    }
    if (per_element != 0) {
      const std::size_t id = interior_offset + el;
      dofs[local++] = id;
      const Point& a = m.vertex(tri[0]);
      const Point& b = m.vertex(tri[1]);
      const Point& c = m.vertex(tri[2]);
      nodes_[id] = {(a.t + b.t + c.t) / 3.0, (a.x + b.x + c.x) / 3.0};
    }
  }

  constrained_.assign(nodes_.size(), 0);
  n_free_ = nodes_.size();
  if (constrain_lateral_) {
    // Nodes of lateral facets are the only nodes with x in {0,1}.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double x = nodes_[i].x;
      if (std::abs(x) <= 1e-14 || std::abs(x - 1.0) <= 1e-14) {
        constrained_[i] = 1;
        --n_free_;
      }
    }
  }
}

FeSpace build_space(std::shared_ptr<const Mesh> mesh, int p, bool constrain_lateral) {
  return FeSpace(std::move(mesh), p, constrain_lateral);
}

long locate(const Mesh& mesh, const Point& point) {
  constexpr double tol = 1e-12;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto ref = mesh.geometry(e).map.pull_back(point);
    if (ref[0] >= -tol && ref[1] >= -tol && ref[0] + ref[1] <= 1.0 + tol) {
      return static_cast<long>(e);
    }
  }
  return -1;
}

FieldValue eval_on_element(const FeSpace& space, std::span<const double> coeffs,
                           std::size_t element, std::array<double, 2> ref_point) {
  const auto map = space.mesh().geometry(element).map;
  const auto basis = eval_basis(space.order(), ref_point);
  const auto dofs = space.element_dofs(element);
  FieldValue out;
  std::array<double, 2> ref_grad{0.0, 0.0};
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const double c = coeffs[dofs[i]];
    out.value += c * basis.values[i];
    ref_grad[0] += c * basis.gradients[i][0];
    ref_grad[1] += c * basis.gradients[i][1];
  }
  out.gradient = map.push_gradient(ref_grad);
  return out;
}

FieldValue eval_field(const FeSpace& space, std::span<const double> coeffs,
                      const Point& point) {
  if (coeffs.size() != space.n_dofs()) {
    throw std::invalid_argument("eval_field: coefficient vector has wrong length");
  }
  const long e = locate(space.mesh(), point);
  if (e < 0) {
    throw std::out_of_range("eval_field: point (" + std::to_string(point.t) + ", " +
                            std::to_string(point.x) + ") outside the mesh");
  }
  const auto ref = space.mesh().geometry(static_cast<std::size_t>(e)).map.pull_back(point);
  return eval_on_element(space, coeffs, static_cast<std::size_t>(e), ref);
}

std::vector<double> interpolate(const FeSpace& space,
                                const std::function<double(const Point&)>& fn) {
  std::vector<double> coeffs;
  coeffs.reserve(space.n_dofs());
  for (const Point& node : space.nodes()) coeffs.push_back(fn(node));
  return coeffs;
}

}  // namespace lswave
