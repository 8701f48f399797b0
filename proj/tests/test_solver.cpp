#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace lswave;

namespace {

CsrMatrix dense_to_csr(std::size_t n, const std::vector<double>& a) {
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i * n + j] != 0.0) rows[i].push_back(j);
    }
  }
  CsrMatrix m = make_pattern(std::move(rows));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i * n + j] != 0.0) m.val[m.find(i, j)] = a[i * n + j];
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("identity and zero right-hand side") {
  const CsrMatrix id = dense_to_csr(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const std::vector<double> b = {1.0, -2.0, 3.5};
  for (auto method : {SolveMethod::ConjugateGradient, SolveMethod::DenseCholesky}) {
    const auto r = solve_spd(id, b, {1e-12, 0, method});
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.solution[i] - b[i]) < 1e-14);
    const auto z = solve_spd(id, std::vector<double>(3, 0.0), {1e-12, 0, method});
    CHECK(z.solution == std::vector<double>(3, 0.0));
    CHECK(z.iterations == 0);
  }
}

TEST_CASE("2x2 system") {
  // [[4,1],[1,3]] x = [1,2] -> x = [1/11, 7/11].
  const CsrMatrix a = dense_to_csr(2, {4, 1, 1, 3});
  const std::vector<double> b = {1.0, 2.0};
  const auto cg = solve_spd(a, b);
  CHECK(std::abs(cg.solution[0] - 1.0 / 11.0) < 1e-12);
  CHECK(std::abs(cg.solution[1] - 7.0 / 11.0) < 1e-12);
  CHECK(cg.iterations <= 2);
  const auto ch = solve_spd(a, b, {1e-10, 0, SolveMethod::DenseCholesky});
  CHECK(std::abs(ch.solution[1] - 7.0 / 11.0) < 1e-14);
}

TEST_CASE("CG agrees with dense Cholesky on an assembled system") {
  std::mt19937 rng(8);
  const auto mesh = testing::share(testing::random_refined_mesh(2, 3, rng));
  const FeSpace sv(mesh, 2, true), ss(mesh, 2, false);
  const auto quad = data_quadrature(2, smooth1d());
  const auto sys = assemble(sv, ss, smooth1d(), quad);
  REQUIRE(sys.matrix.n <= kDenseLimit);
  const double tol = 1e-10;
  const auto cg = solve_spd(sys, {tol, 0, SolveMethod::ConjugateGradient});
  const auto ch = solve_spd(sys, {tol, 0, SolveMethod::DenseCholesky});
  CHECK(cg.relative_residual <= tol);
  const auto diff = [&] {
    std::vector<double> d(cg.solution.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = cg.solution[i] - ch.solution[i];
    return d;
  }();
  // Relative error bounded by condition number times residual; keep a wide margin.
  CHECK(norm2(diff) <= 1e4 * tol * norm2(ch.solution));
  const auto r = sys.matrix.multiply(ch.solution);
  std::vector<double> res(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) res[i] = r[i] - sys.rhs[i];
  CHECK(norm2(res) <= 10 * tol * norm2(sys.rhs));
}

TEST_CASE("failures") {
  const auto mesh = testing::share(create_uniform_mesh(4));
  const FeSpace sv(mesh, 2, true), ss(mesh, 2, false);
  const auto sys = assemble(sv, ss, smooth1d(), data_quadrature(2, smooth1d()));
  CHECK_THROWS_AS(solve_spd(sys, {1e-14, 2, SolveMethod::ConjugateGradient}), SolverError);
  try {
    solve_spd(sys, {1e-14, 2, SolveMethod::ConjugateGradient});
  } catch (const SolverError& e) {
    CHECK(e.residual() > 1e-14);
  }

  const CsrMatrix bad = dense_to_csr(2, {1, 0, 0, -1});
  CHECK_THROWS_AS(solve_spd(bad, std::vector<double>{1.0, 1.0}), std::runtime_error);
  const CsrMatrix id = dense_to_csr(2, {1, 0, 0, 1});
  CHECK_THROWS_AS(solve_spd(id, std::vector<double>{1.0, 1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_spd(id, std::vector<double>{1.0}), std::invalid_argument);
}

}  // TEST_SUITE
