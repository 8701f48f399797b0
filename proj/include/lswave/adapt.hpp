#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lswave/problems.hpp"

namespace lswave {

/// Minimal set M with theta * sum(eta_sq) <= sum_{M} eta_sq, built greedily
/// from the largest indicators (ties by ascending id). Returned in the order
/// the elements were added. An all-zero vector yields {0}.
/// Throws std::invalid_argument for theta outside (0,1) or negative entries.
std::vector<std::size_t> doerfler_mark(std::span<const double> eta_sq, double theta);

enum class RefinementMode { Uniform, Adaptive };

struct StudyOptions {
  int order = 1;
  RefinementMode mode = RefinementMode::Uniform;
  double theta = 0.25;
  std::size_t max_dofs = 100000;
  std::size_t initial_n = 2;
  int quad_order = 0;  // 0: default data quadrature
};

struct StudyRecord {
  std::size_t step = 0;
  std::size_t n_dofs = 0;
  std::size_t n_elements = 0;
  double eta = 0.0;
  std::optional<double> err_v_L2;
  std::optional<double> err_sigma_L2;
  std::optional<double> err_V;
  double seconds = 0.0;
  std::size_t solver_iterations = 0;
};

/// Solver failure inside a study, tagged with the step it happened in.
class StudyError : public std::runtime_error {
 public:
  StudyError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Number of free unknowns of the product space on the initial mesh.
std::size_t initial_system_size(const StudyOptions& options);

/// Solve -> estimate -> (mark ->) refine, one record per step, while the
/// number of free unknowns stays <= max_dofs. Throws std::invalid_argument
/// if the initial system already exceeds max_dofs.
std::vector<StudyRecord> run_study(const ProblemData& problem, const StudyOptions& options);

/// Least-squares slope of log(eta) against log(n_dofs) over the last `count`
/// records (all records if fewer). Needs at least two records.
double fitted_slope(std::span<const StudyRecord> records, std::size_t count = 3);

}  // namespace lswave
