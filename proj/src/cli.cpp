#include "lswave/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

#include "lswave/fem.hpp"

namespace lswave {

std::string validate(const RunConfig& c) {
  if (c.order < 1 || c.order > 3) return "--order must be 1, 2 or 3";
  if (c.mode == RefinementMode::Adaptive && !(c.theta > 0.0 && c.theta < 1.0)) {
    return "--theta must lie in (0,1)";
  }
  if (c.initial_n < 1) return "--initial-n must be >= 1";
  if (c.initial_n > 4096) return "--initial-n too large (max 4096)";
  if (c.quad_order != 0 && (c.quad_order < 2 * c.order || c.quad_order > kMaxQuadratureOrder)) {
    return "--quad-order must lie in [" + std::to_string(2 * c.order) + ", " +
           std::to_string(kMaxQuadratureOrder) + "]";
  }
  if (c.out.empty()) return "--out must name a file";
  if (c.max_dofs < 1) return "--max-dofs must be positive";
  StudyOptions opts;
  opts.order = c.order;
  opts.initial_n = static_cast<std::size_t>(c.initial_n);
  const std::size_t initial = initial_system_size(opts);
  if (static_cast<unsigned long long>(c.max_dofs) < initial) {
    return "--max-dofs " + std::to_string(c.max_dofs) + " is below the initial system size " +
           std::to_string(initial);
  }
  return {};
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, std::span<const StudyRecord> records) {
  os << "step,ndof,nelem,eta,err_v,err_sigma,err_V,seconds\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : records) {
    os << r.step << ',' << r.n_dofs << ',' << r.n_elements << ',' << format_double(r.eta) << ','
       << opt(r.err_v_L2) << ',' << opt(r.err_sigma_L2) << ',' << opt(r.err_V) << ','
       << format_double(r.seconds) << '\n';
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (const std::string msg = validate(config); !msg.empty()) {
    err << "error: " << msg << '\n';
    return 2;
  }
  StudyOptions opts;
  opts.order = config.order;
  opts.mode = config.mode;
  opts.theta = config.theta;
  opts.max_dofs = static_cast<std::size_t>(config.max_dofs);
  opts.initial_n = static_cast<std::size_t>(config.initial_n);
  opts.quad_order = config.quad_order;

  std::vector<StudyRecord> records;
  try {
    records = run_study(make_problem(config.problem), opts);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }

  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << config.out << "' for writing\n";
    return 1;
  }
  write_csv(file, records);
  file.close();
  if (!file) {
    err << "error: failed writing '" << config.out << "'\n";
    return 1;
  }

  out << "problem " << benchmark_name(config.problem) << " order " << config.order << ' '
      << (config.mode == RefinementMode::Uniform ? "uniform" : "adaptive") << ": "
      << records.size() << " steps, final ndof " << records.back().n_dofs << ", eta "
      << format_double(records.back().eta) << '\n';
  if (records.size() >= 2) {
    out << "slope " << format_double(fitted_slope(records)) << '\n';
  } else {
    out << "slope n/a (single step)\n";
  }
  return 0;
}

}  // namespace lswave
