// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace lswave;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;
constexpr double kInf = std::numeric_limits<double>::infinity();

void report(int id, const std::string& title, const Outcome& o, double seconds) {
  std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class F>
void check(int id, const std::string& title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, o, s);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<std::vector<StudyRecord>> smooth_runs;
std::vector<CsrMatrix> small_systems;

void keep_if_small(const CsrMatrix& a) {
  if (a.n <= 200) small_systems.push_back(a);
}

std::vector<std::shared_ptr<const Mesh>> test_meshes() {
  std::mt19937 rng(2024);
  return {testing::share(create_uniform_mesh(2)), testing::share(create_uniform_mesh(3)),
          testing::share(testing::random_refined_mesh(2, 4, rng))};
}

Outcome smooth_rates() {
  Outcome o;
  for (int p = 1; p <= 3; ++p) {
    StudyOptions opt;
    opt.order = p;
    opt.max_dofs = 100000;
    auto records = run_study(smooth1d(), opt);
    const double slope = fitted_slope(records);
    const double target = -0.5 * p;
    const bool ok = records.size() >= 3 && std::abs(slope - target) <= 0.15;
    o.pass = o.pass && ok;
    o.detail += "p=" + std::to_string(p) + " slope " + fmt(slope) + " (target " + fmt(target) +
                ", ndof " + std::to_string(records.back().n_dofs) + ") ";
    smooth_runs.push_back(std::move(records));
  }
  return o;
}

Outcome quasi_optimality() {
  Outcome o;
  // Uniform runs from criterion 1 plus one adaptive run per order.
  for (int p = 1; p <= 3; ++p) {
    StudyOptions opt;
    opt.order = p;
    opt.mode = RefinementMode::Adaptive;
    opt.max_dofs = 20000;
    smooth_runs.push_back(run_study(smooth1d(), opt));
  }
  double lo = kInf, hi = 0.0;
  for (const auto& run : smooth_runs) {
    for (const auto& r : run) {
      const double ratio = *r.err_V / r.eta;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  o.pass = !smooth_runs.empty() && lo >= 0.2 && hi <= 5.0;
  o.detail = "err_V/eta in [" + fmt(lo) + ", " + fmt(hi) + "], band [0.2, 5]";
  return o;
}

Outcome estimator_identity() {
  double worst = 0.0;
  std::size_t count = 0;
  const auto meshes = test_meshes();
  for (const auto& problem : {smooth1d(), pulse1d(), jump1d()}) {
    for (std::size_t m : {0u, 2u}) {  // one uniform, one locally refined
      for (int p = 1; p <= 3; ++p) {
        const testing::Discretization d(meshes[m], p, problem);
        keep_if_small(d.system.matrix);
        const auto ind = compute_indicators(d.space_v, d.space_sigma, d.u, problem, d.quad);
        const auto au = d.system.matrix.multiply(d.x);
        const double j = dot(d.x, au) - 2.0 * dot(d.system.rhs, d.x) +
                         data_norm_sq(*d.mesh, problem, d.quad);
        worst = std::max(worst, std::abs(ind.eta * ind.eta - j) / std::abs(j));
        ++count;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(count) + " solutions, max relative gap " + fmt(worst)};
}

Outcome patch_tests() {
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& problem : {patch_sigma_t(), patch_sigma_x()}) {
    for (const auto& mesh : test_meshes()) {
      for (int p = 1; p <= 3; ++p) {
        const testing::Discretization d(mesh, p, problem);
        keep_if_small(d.system.matrix);
        const auto ind = compute_indicators(d.space_v, d.space_sigma, d.u, problem, d.quad);
        const auto err = compute_errors(d.space_v, d.space_sigma, d.u, problem, d.quad, ind);
        worst = std::max(worst, std::hypot(err.err_v_L2, err.err_sigma_L2));
        ++count;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(count) + " cases, max L2 error " + fmt(worst)};
}

Outcome jump_rates() {
  StudyOptions opt;
  opt.order = 1;
  opt.max_dofs = 100000;
  const auto uniform = run_study(jump1d(), opt);
  opt.mode = RefinementMode::Adaptive;
  opt.max_dofs = 50000;
  const auto adaptive = run_study(jump1d(), opt);
  const double su = fitted_slope(uniform);
  const double sa = fitted_slope(adaptive);
  const bool in_range = su >= -0.20 && su <= -0.08;
  const bool steeper = sa < su;
  return {in_range && steeper, "uniform slope " + fmt(su) + " (range [-0.20, -0.08]" +
                                   (in_range ? "" : ", outside") + "), adaptive slope " +
                                   fmt(sa) + (steeper ? " steeper" : " not steeper")};
}

Outcome doerfler_properties() {
  std::mt19937 rng(606);
  std::uniform_int_distribution<int> len(1, 200);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  std::uniform_real_distribution<double> th(1e-3, 1.0 - 1e-3);
  std::size_t bad = 0, all_zero = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> eta(static_cast<std::size_t>(len(rng)));
    for (double& e : eta) e = std::pow(val(rng), 4);
    if (trial % 10 == 0) eta[0] = 0.0;
    const double theta = th(rng);
    const auto m = doerfler_mark(eta, theta);
    double total = 0.0, marked = 0.0;
    for (double e : eta) total += e;
    for (std::size_t i : m) marked += eta[i];
    if (total == 0.0) {
      // The empty set already carries the bulk; the result is fixed to {0}.
      ++all_zero;
      if (m != std::vector<std::size_t>{0}) ++bad;
      continue;
    }
    const double without_last = marked - eta[m.back()];
    if (!(marked >= theta * total) || !(without_last < theta * total)) ++bad;
  }
  return {bad == 0, "1000 vectors (" + std::to_string(all_zero) + " all zero), " +
                        std::to_string(bad) + " violations"};
}

Outcome mesh_invariants() {
  std::mt19937 rng(77);
  std::size_t bad = 0;
  std::string first_error;
  for (int trial = 0; trial < 10; ++trial) {
    Mesh mesh = create_uniform_mesh(2);
    const double angle0 = mesh.min_angle();
    for (int step = 0; step < 10; ++step) {
      mesh = testing::random_refined_mesh_step(mesh, rng);
      const std::string err = check_mesh(mesh);
      double area = 0.0, min_area = kInf;
      for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        area += mesh.geometry(e).area;
        min_area = std::min(min_area, mesh.geometry(e).area);
      }
      const bool ok = err.empty() && min_area > 0.0 && std::abs(area - 1.0) <= 1e-12 &&
                      mesh.min_angle() >= 0.5 * angle0;
      if (!ok) {
        ++bad;
        if (first_error.empty()) first_error = err.empty() ? "area/angle" : err;
      }
    }
  }
  return {bad == 0, "10 runs x 10 steps, " + std::to_string(bad) + " violations" +
                        (first_error.empty() ? "" : ": " + first_error)};
}

Outcome spd_check() {
  double lmin = kInf;
  for (const auto& a : small_systems) {
    const auto dense = a.to_dense();
    Eigen::MatrixXd m(a.n, a.n);
    for (std::size_t i = 0; i < a.n; ++i) {
      for (std::size_t j = 0; j < a.n; ++j) m(i, j) = dense[i * a.n + j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    lmin = std::min(lmin, es.eigenvalues().minCoeff());
  }
  return {!small_systems.empty() && lmin > 0.0,
          std::to_string(small_systems.size()) + " systems, min eigenvalue " + fmt(lmin)};
}

Outcome pulse_properties() {
  StudyOptions opt;
  opt.order = 2;
  opt.mode = RefinementMode::Adaptive;
  opt.max_dofs = 20000;
  const auto records = run_study(pulse1d(), opt);
  bool ok = records.size() >= 6;  // initial solve plus at least 5 adaptive steps
  for (std::size_t i = 0; i < records.size(); ++i) {
    ok = ok && std::isfinite(records[i].eta) && records[i].eta > 0.0;
    if (i > 0) ok = ok && records[i].eta <= records[i - 1].eta;
  }
  return {ok, std::to_string(records.size()) + " steps, eta " + fmt(records.front().eta) +
                  " -> " + fmt(records.back().eta)};
}

}  // namespace

int main() {
  check(1, "smooth uniform rates -p/2 +- 0.15", smooth_rates);
  check(2, "err_V / eta within [0.2, 5]", quasi_optimality);
  check(3, "estimator equals discrete functional", estimator_identity);
  check(4, "patch tests reproduced", patch_tests);
  check(5, "jump rates uniform vs adaptive", jump_rates);
  check(6, "Doerfler bulk and minimality", doerfler_properties);
  check(7, "mesh invariants under random refinement", mesh_invariants);
  check(8, "assembled systems are SPD", spd_check);
  check(9, "pulse estimator finite, positive, non-increasing", pulse_properties);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
