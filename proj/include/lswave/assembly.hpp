#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lswave/fem.hpp"
#include "lswave/mesh.hpp"
#include "lswave/problems.hpp"
#include "lswave/sparse.hpp"

namespace lswave {

/// Small row-major dense matrix for element kernels.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Subdivision depth of composite rules for sharp data or rough solutions.
inline constexpr int kCompositeDepth = 3;

/// Subdivision depth of the t = 0 line rule for sharp data (2^7 pieces per
/// edge). Initial data of the pulse are resolved to rounding on a single edge.
inline constexpr int kTraceCompositeDepth = 7;

/// Quadrature used for every integral that involves problem data. The same
/// rules serve the load vector and the estimator, so the estimator equals the
/// least-squares functional of the discrete solution up to rounding.
struct DataQuadrature {
  int order = 0;
  int depth = 0;  // composite subdivision level
  QuadratureRule volume;
  LineRule line;
};

/// Order max(2p, 6) unless `order_override` > 0; composite depths
/// kCompositeDepth (volume) and kTraceCompositeDepth (t = 0 line) for sharp
/// problems. Throws std::invalid_argument for orders outside [2p, 14].
DataQuadrature data_quadrature(int p, const ProblemData& problem, int order_override = 0);

/// Least-squares element kernel over the local pairs (v-basis first, then
/// sigma-basis): integral over T of
///   (dt v - dx s)(dt w - dx c) + (dt s - dx v)(dt c - dx w).
DenseMatrix element_matrix(const ElementGeometry& geom, int p, const QuadratureRule& quad);

/// Mass matrix of the trace on the t = 0 edge `local_edge` of `element`,
/// block diagonal over (v, sigma). Throws std::invalid_argument for an edge
/// not on the initial face.
DenseMatrix initial_trace_matrix(const Mesh& mesh, std::size_t element, int local_edge,
                                 int p, const LineRule& rule);

/// Free-DOF numbering of the product space: v block first, then sigma block.
struct BlockLayout {
  std::vector<long> v_index;      // node -> system row, -1 if constrained
  std::vector<long> sigma_index;  // node -> system row, -1 if constrained
  std::size_t n_v = 0;
  std::size_t n_sigma = 0;

  std::size_t size() const { return n_v + n_sigma; }
  std::size_t sigma_offset() const { return n_v; }
};

BlockLayout make_layout(const FeSpace& space_v, const FeSpace& space_sigma);

struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  BlockLayout layout;
};

/// Nodal coefficient vectors of v and sigma; constrained entries are zero.
struct DiscreteSolution {
  std::vector<double> v;
  std::vector<double> sigma;
};

DiscreteSolution expand(const BlockLayout& layout, std::span<const double> x);

/// Inverse of expand; constrained entries are dropped.
std::vector<double> restrict_to_free(const BlockLayout& layout, const DiscreteSolution& u);

/// Global least-squares system with lateral DOFs of v eliminated.
/// Throws std::invalid_argument if the spaces live on different meshes or
/// have different orders.
SparseSystem assemble(const FeSpace& space_v, const FeSpace& space_sigma,
                      const ProblemData& problem, const DataQuadrature& quad);

/// Load vector alone (same integrals as assemble).
std::vector<double> assemble_load(const FeSpace& space_v, const FeSpace& space_sigma,
                                  const BlockLayout& layout, const ProblemData& problem,
                                  const DataQuadrature& quad);

}  // namespace lswave
