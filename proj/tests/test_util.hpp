#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <vector>

#include "lswave/adapt.hpp"
#include "lswave/assembly.hpp"
#include "lswave/estimator.hpp"
#include "lswave/fem.hpp"
#include "lswave/mesh.hpp"
#include "lswave/problems.hpp"
#include "lswave/solver.hpp"

namespace lswave::testing {

/// Mesh, both spaces, and the solved system for one problem.
struct Discretization {
  std::shared_ptr<const Mesh> mesh;
  FeSpace space_v;
  FeSpace space_sigma;
  DataQuadrature quad;
  SparseSystem system;
  std::vector<double> x;
  DiscreteSolution u;

  Discretization(std::shared_ptr<const Mesh> m, int p, const ProblemData& problem)
      : mesh(std::move(m)),
        space_v(mesh, p, true),
        space_sigma(mesh, p, false),
        quad(data_quadrature(p, problem)),
        system(assemble(space_v, space_sigma, problem, quad)) {
    x = solve_spd(system).solution;
    u = expand(system.layout, x);
  }
};

inline std::shared_ptr<const Mesh> share(Mesh m) {
  return std::make_shared<const Mesh>(std::move(m));
}

/// One refinement with each element marked with probability `fraction`
/// (at least one element marked).
inline Mesh random_refined_mesh_step(const Mesh& mesh, std::mt19937& rng, double fraction = 0.2) {
  std::vector<std::size_t> marked;
  std::bernoulli_distribution pick(fraction);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    if (pick(rng)) marked.push_back(e);
  }
  if (marked.empty()) {
    marked.push_back(std::uniform_int_distribution<std::size_t>(0, mesh.num_elements() - 1)(rng));
  }
  return refine_marked(mesh, marked);
}

/// Mesh after `steps` random markings starting from create_uniform_mesh(n).
inline Mesh random_refined_mesh(std::size_t n, int steps, std::mt19937& rng,
                                double fraction = 0.2) {
  Mesh mesh = create_uniform_mesh(n);
  for (int s = 0; s < steps; ++s) mesh = random_refined_mesh_step(mesh, rng, fraction);
  return mesh;
}

/// Interpolates the exact pair of `problem` into the spaces (v constrained
/// nodes set to zero).
inline DiscreteSolution interpolate_exact(const FeSpace& sv, const FeSpace& ss,
                                          const ProblemData& problem) {
  DiscreteSolution u;
  u.v = interpolate(sv, problem.exact->v);
  u.sigma = interpolate(ss, problem.exact->sigma);
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    if (sv.is_constrained(i)) u.v[i] = 0.0;
  }
  return u;
}

}  // namespace lswave::testing
