#include "lswave/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lswave {

std::size_t CsrMatrix::find(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) {
    throw std::out_of_range("CsrMatrix: (" + std::to_string(i) + "," + std::to_string(j) +
                            ") not in sparsity pattern");
  }
  return static_cast<std::size_t>(it - col.begin());
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  return (it == last || *it != j) ? 0.0 : val[static_cast<std::size_t>(it - col.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n);
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) dense[i * n + col[k]] = val[k];
  }
  return dense;
}

CsrMatrix make_pattern(std::vector<std::vector<std::size_t>> rows) {
  CsrMatrix m;
  m.n = rows.size();
  m.row_ptr.assign(m.n + 1, 0);
  for (std::size_t i = 0; i < m.n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    m.row_ptr[i + 1] = m.row_ptr[i] + r.size();
  }
  m.col.reserve(m.row_ptr.back());
  for (auto& r : rows) {
    m.col.insert(m.col.end(), r.begin(), r.end());
    r.clear();
    r.shrink_to_fit();
  }
  m.val.assign(m.col.size(), 0.0);
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace lswave
