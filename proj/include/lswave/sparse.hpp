#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lswave {

/// Square matrix in compressed-row layout with sorted column indices.
struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr;  // size n + 1
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }

  /// Entry (i,j), zero outside the pattern.
  double at(std::size_t i, std::size_t j) const;

  /// Position of (i,j) in val; throws std::out_of_range outside the pattern.
  std::size_t find(std::size_t i, std::size_t j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Row-major dense copy.
  std::vector<double> to_dense() const;
};

/// CSR skeleton with zero values from per-row column lists.
CsrMatrix make_pattern(std::vector<std::vector<std::size_t>> rows);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace lswave
