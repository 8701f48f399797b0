#include "lswave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lswave {

namespace {

constexpr double kCoordTol = 1e-14;

std::uint64_t edge_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.t - b.t, a.x - b.x);
}

bool near(double a, double b) { return std::abs(a - b) <= kCoordTol; }

/// Tag of a segment lying on the unit-square boundary; false if interior.
bool classify(const Point& a, const Point& b, BoundaryTag& tag) {
  if ((near(a.x, 0.0) && near(b.x, 0.0)) || (near(a.x, 1.0) && near(b.x, 1.0))) {
    tag = BoundaryTag::Lateral;
    return true;
  }
  if (near(a.t, 0.0) && near(b.t, 0.0)) {
    tag = BoundaryTag::Initial;
    return true;
  }
  if (near(a.t, 1.0) && near(b.t, 1.0)) {
    tag = BoundaryTag::Terminal;
    return true;
  }
  return false;
}

/// Longest edge; ties go to the edge whose opposite vertex has the smallest index.
int longest_edge(std::span<const Point> verts, const Triangle& tri) {
  int best = -1;
  double best_len = -1.0;
  for (int k = 0; k < 3; ++k) {
    const auto e = local_edge(tri, k);
    const double len = distance(verts[e[0]], verts[e[1]]);
    if (best < 0 || len > best_len * (1.0 + 1e-12) ||
        (std::abs(len - best_len) <= 1e-12 * best_len &&
         tri[static_cast<std::size_t>(k)] < tri[static_cast<std::size_t>(best)])) {
      best = k;
      best_len = len;
    }
  }
  return best;
}

}  // namespace

ElementGeometry triangle_geometry(const Point& a, const Point& b, const Point& c) {
  ElementGeometry g;
  auto& m = g.map;
  m.origin = a;
  m.jacobian = {{{b.t - a.t, c.t - a.t}, {b.x - a.x, c.x - a.x}}};
  m.det = m.jacobian[0][0] * m.jacobian[1][1] - m.jacobian[0][1] * m.jacobian[1][0];
  if (!(m.det > 0.0)) {
    throw std::runtime_error("degenerate or inverted element (det = " +
                             std::to_string(m.det) + ")");
  }
  const double inv = 1.0 / m.det;
  m.inverse = {{{m.jacobian[1][1] * inv, -m.jacobian[0][1] * inv},
                {-m.jacobian[1][0] * inv, m.jacobian[0][0] * inv}}};
  g.area = 0.5 * m.det;
  g.diameter = std::max({distance(a, b), distance(b, c), distance(c, a)});
  return g;
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> elements,
           std::vector<int> refinement_edge)
    : vertices_(std::move(vertices)),
      elements_(std::move(elements)),
      refinement_edge_(std::move(refinement_edge)) {
  if (refinement_edge_.size() != elements_.size()) {
    throw std::invalid_argument("Mesh: one refinement edge per element required");
  }
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    for (std::size_t v : elements_[e]) {
      if (v >= vertices_.size()) {
        throw std::invalid_argument("Mesh: element " + std::to_string(e) +
                                    " references a missing vertex");
      }
    }
    if (refinement_edge_[e] < 0 || refinement_edge_[e] > 2) {
      throw std::invalid_argument("Mesh: refinement edge index out of {0,1,2}");
    }
  }

  std::unordered_map<std::uint64_t, int> count;
  count.reserve(3 * elements_.size());
  for (const auto& tri : elements_) {
    for (int k = 0; k < 3; ++k) {
      const auto e = local_edge(tri, k);
      ++count[edge_key(e[0], e[1])];
    }
  }
  // Walk elements in order so the facet list is deterministic.
  for (const auto& tri : elements_) {
    for (int k = 0; k < 3; ++k) {
      const auto e = local_edge(tri, k);
      if (count[edge_key(e[0], e[1])] != 1) continue;
      BoundaryTag tag;
      if (classify(vertices_[e[0]], vertices_[e[1]], tag)) {
        boundary_.push_back({std::min(e[0], e[1]), std::max(e[0], e[1]), tag});
      }
    }
  }
}

ElementGeometry Mesh::geometry(std::size_t id) const {
  const auto& tri = elements_.at(id);
  return triangle_geometry(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (std::size_t e = 0; e < elements_.size(); ++e) h = std::max(h, geometry(e).diameter);
  return h;
}

double Mesh::min_angle() const {
  double angle = std::numbers::pi;
  for (const auto& tri : elements_) {
    for (int k = 0; k < 3; ++k) {
      const Point& p = vertices_[tri[static_cast<std::size_t>(k)]];
      const Point& q = vertices_[tri[static_cast<std::size_t>((k + 1) % 3)]];
      const Point& r = vertices_[tri[static_cast<std::size_t>((k + 2) % 3)]];
      const double ut = q.t - p.t, ux = q.x - p.x;
      const double wt = r.t - p.t, wx = r.x - p.x;
      const double a = std::atan2(std::abs(ut * wx - ux * wt), ut * wt + ux * wx);
      angle = std::min(angle, a);
    }
  }
  return angle;
}

double Mesh::total_area() const {
  double area = 0.0;
  for (std::size_t e = 0; e < elements_.size(); ++e) area += geometry(e).area;
  return area;
}

int Mesh::initial_edge(std::size_t id) const {
  const auto& tri = elements_.at(id);
  for (int k = 0; k < 3; ++k) {
    const auto e = local_edge(tri, k);
    if (near(vertices_[e[0]].t, 0.0) && near(vertices_[e[1]].t, 0.0)) return k;
  }
  return -1;
}

void Mesh::write(std::ostream& os) const {
  os << "vertices " << vertices_.size() << " elements " << elements_.size() << '\n';
  std::ostringstream line;
  line.precision(17);
  for (const auto& v : vertices_) line << v.t << ' ' << v.x << '\n';
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const auto& tri = elements_[e];
    line << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << refinement_edge_[e] << '\n';
  }
  os << line.str();
}

Mesh read_mesh(std::istream& is) {
  std::string kv, ke;
  std::size_t nv = 0, ne = 0;
  if (!(is >> kv >> nv >> ke >> ne) || kv != "vertices" || ke != "elements") {
    throw std::runtime_error("read_mesh: bad header");
  }
  std::vector<Point> verts(nv);
  for (auto& v : verts) {
    if (!(is >> v.t >> v.x)) throw std::runtime_error("read_mesh: truncated vertex list");
  }
  std::vector<Triangle> elems(ne);
  std::vector<int> ref(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    if (!(is >> elems[e][0] >> elems[e][1] >> elems[e][2] >> ref[e])) {
      throw std::runtime_error("read_mesh: truncated element list");
    }
  }
  return Mesh(std::move(verts), std::move(elems), std::move(ref));
}

Mesh create_uniform_mesh(std::size_t n) {
  if (n == 0) throw std::invalid_argument("create_uniform_mesh: n must be >= 1");
  const std::size_t stride = n + 1;
  std::vector<Point> verts;
  verts.reserve(stride * stride);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      verts.push_back({static_cast<double>(i) / static_cast<double>(n),
                       static_cast<double>(j) / static_cast<double>(n)});
    }
  }
  std::vector<Triangle> elems;
  std::vector<int> ref;
  elems.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = j * stride + i;
      const std::size_t b = a + 1;
      const std::size_t c = b + stride;
      const std::size_t d = a + stride;
      elems.push_back({a, b, c});
      elems.push_back({a, c, d});
    }
  }
  ref.reserve(elems.size());
  for (const auto& tri : elems) ref.push_back(longest_edge(verts, tri));
  return Mesh(std::move(verts), std::move(elems), std::move(ref));
}

Mesh refine_marked(const Mesh& mesh, std::span<const std::size_t> marked) {
  const auto elems = mesh.elements();
  const auto refs = mesh.refinement_edges();
  for (std::size_t id : marked) {
    if (id >= elems.size()) {
      throw std::out_of_range("refine_marked: element id " + std::to_string(id) +
                              " out of range");
    }
  }

  auto ref_key = [&](std::size_t e) {
    const auto edge = local_edge(elems[e], refs[e]);
    return edge_key(edge[0], edge[1]);
  };

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> edge_elems;
  edge_elems.reserve(3 * elems.size());
  for (std::size_t e = 0; e < elems.size(); ++e) {
    for (int k = 0; k < 3; ++k) {
      const auto edge = local_edge(elems[e], k);
      edge_elems[edge_key(edge[0], edge[1])].push_back(e);
    }
  }

  // Closure: an element with any marked edge must have its refinement edge marked.
  std::unordered_map<std::uint64_t, std::size_t> midpoint;
  std::vector<std::uint64_t> queue;
  auto mark_edge = [&](std::uint64_t key) {
    if (midpoint.emplace(key, 0).second) queue.push_back(key);
  };
  for (std::size_t id : marked) mark_edge(ref_key(id));
  while (!queue.empty()) {
    const std::uint64_t key = queue.back();
    queue.pop_back();
    for (std::size_t e : edge_elems[key]) mark_edge(ref_key(e));
  }
  if (midpoint.empty()) return mesh;

  std::vector<Point> verts(mesh.vertices().begin(), mesh.vertices().end());
  for (const auto& tri : elems) {
    for (int k = 0; k < 3; ++k) {
      const auto edge = local_edge(tri, k);
      auto it = midpoint.find(edge_key(edge[0], edge[1]));
      if (it == midpoint.end() || it->second != 0) continue;
      const Point& a = verts[edge[0]];
      const Point& b = verts[edge[1]];
      it->second = verts.size();
      verts.push_back({0.5 * (a.t + b.t), 0.5 * (a.x + b.x)});
    }
  }

  std::vector<Triangle> out;
  std::vector<int> out_ref;
  out.reserve(elems.size() + 2 * midpoint.size());
  out_ref.reserve(out.capacity());

  // Rotate so the refinement edge is (p1,p2) opposite p0; the children
  // (p0,p1,m) and (p0,m,p2) keep the orientation and inherit the old edges
  // opposite m as their refinement edges.
  auto bisect = [&](auto&& self, const Triangle& tri, int ref) -> void {
    const auto edge = local_edge(tri, ref);
    const auto it = midpoint.find(edge_key(edge[0], edge[1]));
    if (it == midpoint.end()) {
      out.push_back(tri);
      out_ref.push_back(ref);
      return;
    }
    const std::size_t p0 = tri[static_cast<std::size_t>(ref)];
    const std::size_t m = it->second;
    self(self, Triangle{p0, edge[0], m}, 2);
    self(self, Triangle{p0, m, edge[1]}, 1);
  };
  for (std::size_t e = 0; e < elems.size(); ++e) bisect(bisect, elems[e], refs[e]);

  return Mesh(std::move(verts), std::move(out), std::move(out_ref));
}

Mesh refine_uniform(const Mesh& mesh) {
  auto all = [](const Mesh& m) {
    std::vector<std::size_t> ids(m.num_elements());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
  };
  const Mesh once = refine_marked(mesh, all(mesh));
  return refine_marked(once, all(once));
}

std::string check_mesh(const Mesh& mesh) {
  const auto verts = mesh.vertices();
  const auto elems = mesh.elements();
  double area = 0.0;
  std::unordered_map<std::uint64_t, int> count;
  for (std::size_t e = 0; e < elems.size(); ++e) {
    const auto& tri = elems[e];
    const auto& a = verts[tri[0]];
    const auto& b = verts[tri[1]];
    const auto& c = verts[tri[2]];
    const double det = (b.t - a.t) * (c.x - a.x) - (c.t - a.t) * (b.x - a.x);
    if (!(det > 0.0)) return "element " + std::to_string(e) + " has non-positive area";
    area += 0.5 * det;
    for (int k = 0; k < 3; ++k) {
      const auto edge = local_edge(tri, k);
      if (++count[edge_key(edge[0], edge[1])] > 2) {
        return "edge shared by more than two elements at element " + std::to_string(e);
      }
    }
  }
  if (std::abs(area - 1.0) > 1e-12) return "total area " + std::to_string(area) + " != 1";

  // With positive areas summing to |Q|, every edge seen once must lie on the
  // boundary; a hanging node leaves an interior edge seen once.
  std::size_t n_boundary = 0;
  for (const auto& [key, c] : count) {
    if (c != 1) continue;
    ++n_boundary;
    BoundaryTag tag;
    const auto a = static_cast<std::size_t>(key >> 32);
    const auto b = static_cast<std::size_t>(key & 0xffffffffu);
    if (!classify(verts[a], verts[b], tag)) {
      return "interior edge (" + std::to_string(a) + "," + std::to_string(b) +
             ") has a single neighbour (non-conforming)";
    }
  }
  const auto facets = mesh.boundary_facets();
  if (facets.size() != n_boundary) return "boundary facet list incomplete";
  for (const auto& f : facets) {
    BoundaryTag tag;
    if (count[edge_key(f.a, f.b)] != 1 || !classify(verts[f.a], verts[f.b], tag) ||
        tag != f.tag) {
      return "boundary facet (" + std::to_string(f.a) + "," + std::to_string(f.b) +
             ") mis-tagged";
    }
  }
  return {};
}

}  // namespace lswave
