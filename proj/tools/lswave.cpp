#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "lswave/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Space-time least-squares FEM for the 1D acoustic wave system"};
  lswave::RunConfig config;

  const std::map<std::string, lswave::BenchmarkId> problems = {
      {"smooth1d", lswave::BenchmarkId::Smooth1D},
      {"pulse1d", lswave::BenchmarkId::Pulse1D},
      {"jump1d", lswave::BenchmarkId::Jump1D}};
  const std::map<std::string, lswave::RefinementMode> modes = {
      {"uniform", lswave::RefinementMode::Uniform},
      {"adaptive", lswave::RefinementMode::Adaptive}};

  app.add_option("--problem", config.problem, "smooth1d | pulse1d | jump1d")
      ->transform(CLI::CheckedTransformer(problems, CLI::ignore_case));
  app.add_option("--order", config.order, "polynomial order 1..3");
  app.add_option("--mode", config.mode, "uniform | adaptive")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--theta", config.theta, "bulk marking parameter");
  app.add_option("--max-dofs", config.max_dofs, "stop before exceeding this many unknowns");
  app.add_option("--initial-n", config.initial_n, "initial mesh is n x n squares");
  app.add_option("--out", config.out, "CSV output path");
  app.add_option("--quad-order", config.quad_order, "data quadrature order (0 = default)");

  CLI11_PARSE(app, argc, argv);
  return lswave::run(config, std::cout, std::cerr);
}
