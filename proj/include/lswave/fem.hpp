#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lswave/mesh.hpp"

namespace lswave {

/// Highest order with a quadrature table.
inline constexpr int kMaxQuadratureOrder = 14;

/// Rule on the reference triangle {(0,0),(1,0),(0,1)}; weights sum to 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 2>> points;  // (u, w)
  std::vector<double> weights;
  int order = 0;
};

/// Gauss-Legendre rule on [0,1] with weights summing to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Exact for polynomials of total degree <= order; 1 <= order <= 14.
QuadratureRule quadrature_rule(int order);

/// Composite rule: the reference triangle split into 4^depth congruent pieces.
QuadratureRule composite_rule(int order, int depth);

/// n-point Gauss-Legendre on [0,1], exact up to degree 2n-1.
LineRule gauss_legendre(int n);

/// Line rule exact to `order`, optionally on 2^depth equal sub-intervals.
LineRule line_rule(int order, int depth = 0);

/// Number of local shape functions of the P^p triangle.
constexpr std::size_t local_dofs(int p) {
  return static_cast<std::size_t>((p + 1) * (p + 2) / 2);
}

struct BasisValues {
  std::vector<double> values;
  std::vector<std::array<double, 2>> gradients;  // reference (d/du, d/dw)
};

/// Equispaced Lagrange basis of order p in {1,2,3} at a reference point.
/// Local order: vertices 0..2, then p-1 nodes per edge k = (v[k+1], v[k+2])
/// running from the first to the second endpoint, then interior nodes.
BasisValues eval_basis(int p, std::array<double, 2> ref_point);

/// eval_basis at every point of a rule.
std::vector<BasisValues> tabulate(int p, std::span<const std::array<double, 2>> points);

/// Reference coordinates of the local nodes, in the local order above.
std::vector<std::array<double, 2>> reference_nodes(int p);

/// Continuous P^p space with global numbering: vertex DOFs first, then edge
/// DOFs (edge-interior nodes numbered from the lower to the higher global
/// vertex index), then element-interior DOFs.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, int p, bool constrain_lateral);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int order() const { return order_; }
  bool constrained_lateral() const { return constrain_lateral_; }
  std::size_t n_dofs() const { return nodes_.size(); }
  std::size_t n_free() const { return n_free_; }
  std::size_t n_edges() const { return n_edges_; }

  std::span<const std::size_t> element_dofs(std::size_t e) const {
    return {dof_map_.data() + e * n_local_, n_local_};
  }
  /// 1 where the node carries the homogeneous lateral Dirichlet condition.
  std::span<const std::uint8_t> constrained() const { return constrained_; }
  bool is_constrained(std::size_t dof) const { return constrained_[dof] != 0; }
  std::span<const Point> nodes() const { return nodes_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int order_;
  bool constrain_lateral_;
  std::size_t n_local_;
  std::size_t n_edges_ = 0;
  std::size_t n_free_ = 0;
  std::vector<std::size_t> dof_map_;
  std::vector<Point> nodes_;
  std::vector<std::uint8_t> constrained_;
};

/// Throws std::invalid_argument unless p is 1, 2 or 3.
FeSpace build_space(std::shared_ptr<const Mesh> mesh, int p, bool constrain_lateral);

struct FieldValue {
  double value = 0.0;
  std::array<double, 2> gradient{};  // (d/dt, d/dx)
};

/// Element containing `point` (closed, tolerance 1e-12), or -1.
long locate(const Mesh& mesh, const Point& point);

/// Value and physical gradient of the discrete field at a point.
/// Throws std::out_of_range for points outside Q.
FieldValue eval_field(const FeSpace& space, std::span<const double> coeffs,
                      const Point& point);

/// Same as eval_field with the element already known.
FieldValue eval_on_element(const FeSpace& space, std::span<const double> coeffs,
                           std::size_t element, std::array<double, 2> ref_point);

/// Nodal interpolant; constrained nodes receive their function value as well.
std::vector<double> interpolate(const FeSpace& space,
                                const std::function<double(const Point&)>& fn);

}  // namespace lswave
