#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "lswave/adapt.hpp"
#include "lswave/problems.hpp"

namespace lswave {

struct RunConfig {
  BenchmarkId problem = BenchmarkId::Smooth1D;
  int order = 1;
  RefinementMode mode = RefinementMode::Uniform;
  double theta = 0.25;
  long long max_dofs = 100000;
  long long initial_n = 2;
  std::string out = "study.csv";
  int quad_order = 0;
};

/// Empty when valid, otherwise a message naming the offending flag.
std::string validate(const RunConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Header `step,ndof,nelem,eta,err_v,err_sigma,err_V,seconds` and one row per
/// record; missing errors are empty fields.
void write_csv(std::ostream& os, std::span<const StudyRecord> records);

/// Validates, runs the study, writes the CSV and prints the fitted slope.
/// Returns 0 on success, 2 for invalid configurations, 1 for runtime failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lswave
