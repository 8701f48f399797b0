#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lswave {

/// Point of the space-time square, first coordinate is time.
struct Point {
  double t = 0.0;
  double x = 0.0;
};

enum class BoundaryTag { Lateral, Initial, Terminal };

/// Boundary edge with its endpoints in increasing index order.
struct BoundaryFacet {
  std::size_t a = 0;
  std::size_t b = 0;
  BoundaryTag tag = BoundaryTag::Lateral;
};

/// Vertex triple of a triangle, counter-clockwise. Local edge k is the edge
/// opposite local vertex k, i.e. (v[k+1], v[k+2]) taken cyclically.
using Triangle = std::array<std::size_t, 3>;

/// Affine map from the reference triangle {(0,0),(1,0),(0,1)}:
/// P(u,w) = origin + jacobian * (u,w)^T.
struct AffineMap {
  Point origin;
  std::array<std::array<double, 2>, 2> jacobian{};  // rows (t,x), cols (u,w)
  std::array<std::array<double, 2>, 2> inverse{};
  double det = 0.0;

  Point operator()(double u, double w) const {
    return {origin.t + jacobian[0][0] * u + jacobian[0][1] * w,
            origin.x + jacobian[1][0] * u + jacobian[1][1] * w};
  }

  /// Physical gradient (d/dt, d/dx) from a reference gradient (d/du, d/dw).
  std::array<double, 2> push_gradient(const std::array<double, 2>& ref) const {
    return {inverse[0][0] * ref[0] + inverse[1][0] * ref[1],
            inverse[0][1] * ref[0] + inverse[1][1] * ref[1]};
  }

  /// Reference coordinates of a physical point.
  std::array<double, 2> pull_back(const Point& p) const {
    const double dt = p.t - origin.t;
    const double dx = p.x - origin.x;
    return {inverse[0][0] * dt + inverse[0][1] * dx,
            inverse[1][0] * dt + inverse[1][1] * dx};
  }
};

struct ElementGeometry {
  double area = 0.0;
  double diameter = 0.0;
  AffineMap map;
};

ElementGeometry triangle_geometry(const Point& a, const Point& b, const Point& c);

/// Conforming triangulation of Q = (0,1)_t x (0,1)_x with newest-vertex
/// bisection bookkeeping. Immutable once built; refinement returns a new mesh.
class Mesh {
 public:
  /// Validates the input and derives the boundary facets from geometry.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> elements,
       std::vector<int> refinement_edge);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_elements() const { return elements_.size(); }

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Triangle> elements() const { return elements_; }
  std::span<const int> refinement_edges() const { return refinement_edge_; }
  std::span<const BoundaryFacet> boundary_facets() const { return boundary_; }

  const Point& vertex(std::size_t i) const { return vertices_.at(i); }
  const Triangle& element(std::size_t id) const { return elements_.at(id); }
  int refinement_edge(std::size_t id) const { return refinement_edge_.at(id); }

  /// Throws std::out_of_range for a bad id and std::runtime_error for a
  /// degenerate element.
  ElementGeometry geometry(std::size_t id) const;

  double max_diameter() const;
  double min_angle() const;
  double total_area() const;

  /// Local edge index of `id` lying on the t = 0 face, or -1.
  int initial_edge(std::size_t id) const;

  /// Writes `vertices <n> elements <m>`, then `t x` lines, then `i j k refedge`.
  void write(std::ostream& os) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> elements_;
  std::vector<int> refinement_edge_;
  std::vector<BoundaryFacet> boundary_;
};

/// Endpoints of local edge k of a triangle, in local order.
inline std::array<std::size_t, 2> local_edge(const Triangle& tri, int k) {
  return {tri[(k + 1) % 3], tri[(k + 2) % 3]};
}

/// n x n squares, each split along the diagonal (i/n, j/n)-((i+1)/n, (j+1)/n).
Mesh create_uniform_mesh(std::size_t n);

/// Newest-vertex bisection of every marked element plus conforming closure.
/// Throws std::out_of_range for ids not in the mesh.
Mesh refine_marked(const Mesh& mesh, std::span<const std::size_t> marked);

/// Two bisection sweeps over all elements: every element yields 4 children.
Mesh refine_uniform(const Mesh& mesh);

Mesh read_mesh(std::istream& is);

/// Returns an empty string for a valid mesh, otherwise a description of the
/// first violated invariant (conformity, orientation, tagging, area).
std::string check_mesh(const Mesh& mesh);

}  // namespace lswave
