#include "lswave/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>

#include "lswave/assembly.hpp"
#include "lswave/estimator.hpp"
#include "lswave/fem.hpp"
#include "lswave/mesh.hpp"
#include "lswave/solver.hpp"

namespace lswave {

std::vector<std::size_t> doerfler_mark(std::span<const double> eta_sq, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("doerfler_mark: theta must lie in (0,1)");
  }
  if (eta_sq.empty()) return {};
  std::vector<std::size_t> order(eta_sq.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (double e : eta_sq) {
    if (!(e >= 0.0)) throw std::invalid_argument("doerfler_mark: negative or NaN indicator");
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eta_sq[a] > eta_sq[b]; });
  double total = 0.0;
  for (std::size_t id : order) total += eta_sq[id];
  if (total == 0.0) return {0};

  const double threshold = theta * total;
  std::vector<std::size_t> marked;
  double acc = 0.0;
  for (std::size_t id : order) {
    marked.push_back(id);
    acc += eta_sq[id];
    if (acc >= threshold) break;
  }
  return marked;
}

std::size_t initial_system_size(const StudyOptions& options) {
  auto mesh = std::make_shared<const Mesh>(create_uniform_mesh(options.initial_n));
  const FeSpace sv(mesh, options.order, true);
  const FeSpace ss(mesh, options.order, false);
  return sv.n_free() + ss.n_free();
}

std::vector<StudyRecord> run_study(const ProblemData& problem, const StudyOptions& options) {
  using Clock = std::chrono::steady_clock;
  if (options.mode == RefinementMode::Adaptive &&
      !(options.theta > 0.0 && options.theta < 1.0)) {
    throw std::invalid_argument("run_study: theta must lie in (0,1)");
  }
  const DataQuadrature quad = data_quadrature(options.order, problem, options.quad_order);

  auto mesh = std::make_shared<const Mesh>(create_uniform_mesh(options.initial_n));
  std::vector<StudyRecord> records;
  for (std::size_t step = 0;; ++step) {
    const auto start = Clock::now();
    const FeSpace space_v(mesh, options.order, true);
    const FeSpace space_sigma(mesh, options.order, false);
    const std::size_t n_dofs = space_v.n_free() + space_sigma.n_free();
    if (n_dofs > options.max_dofs) {
      if (step == 0) {
        throw std::invalid_argument("run_study: initial system has " + std::to_string(n_dofs) +
                                    " unknowns, above max_dofs = " +
                                    std::to_string(options.max_dofs));
      }
      break;
    }

    const SparseSystem system = assemble(space_v, space_sigma, problem, quad);
    SolveReport solve;
    try {
      solve = solve_spd(system);
    } catch (const std::exception& ex) {
      throw StudyError(step, ex.what());
    }
    const DiscreteSolution u = expand(system.layout, solve.solution);
    const IndicatorField ind = compute_indicators(space_v, space_sigma, u, problem, quad);

    StudyRecord rec;
    rec.step = step;
    rec.n_dofs = n_dofs;
    rec.n_elements = mesh->num_elements();
    rec.eta = ind.eta;
    rec.solver_iterations = solve.iterations;
    if (problem.exact) {
      const ErrorReport err = compute_errors(space_v, space_sigma, u, problem, quad, ind);
      rec.err_v_L2 = err.err_v_L2;
      rec.err_sigma_L2 = err.err_sigma_L2;
      rec.err_V = err.err_V;
    }

    if (options.mode == RefinementMode::Uniform) {
      mesh = std::make_shared<const Mesh>(refine_uniform(*mesh));
    } else {
      const auto marked = doerfler_mark(ind.eta_sq, options.theta);
      mesh = std::make_shared<const Mesh>(refine_marked(*mesh, marked));
    }
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    records.push_back(rec);
  }
  return records;
}

double fitted_slope(std::span<const StudyRecord> records, std::size_t count) {
  const std::size_t m = std::min(count, records.size());
  if (m < 2) throw std::invalid_argument("fitted_slope: need at least two records");
  const auto tail = records.subspan(records.size() - m);
  double sx = 0.0, sy = 0.0;
  for (const auto& r : tail) {
    sx += std::log(static_cast<double>(r.n_dofs));
    sy += std::log(r.eta);
  }
  const double mx = sx / static_cast<double>(m);
  const double my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : tail) {
    const double dx = std::log(static_cast<double>(r.n_dofs)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.eta) - my);
  }
  return sxy / sxx;
}

}  // namespace lswave
