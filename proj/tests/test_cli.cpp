#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "lswave/cli.hpp"

using namespace lswave;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// CSV text with the last column (wall-clock seconds) removed.
std::string without_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

std::filesystem::path temp_csv(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lswave_test_" + name + ".csv");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validation messages name the flag") {
  RunConfig c;
  CHECK(validate(c).empty());
  c.order = 4;
  CHECK(validate(c).find("--order") != std::string::npos);
  c = {};
  c.mode = RefinementMode::Adaptive;
  c.theta = 1.0;
  CHECK(validate(c).find("--theta") != std::string::npos);
  c = {};
  c.initial_n = 0;
  CHECK(validate(c).find("--initial-n") != std::string::npos);
  c = {};
  c.quad_order = 3;
  c.order = 2;
  CHECK(validate(c).find("--quad-order") != std::string::npos);
  c = {};
  c.max_dofs = 10;
  CHECK(validate(c) == "--max-dofs 10 is below the initial system size 12");
  c.max_dofs = -1;
  CHECK(validate(c).find("--max-dofs") != std::string::npos);
}

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int k = 0; k < 1000; ++k) {
    const double v = std::ldexp(mant(rng), expo(rng));
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(3.0) == "3");
  CHECK(std::stod(format_double(std::numeric_limits<double>::min())) ==
        std::numeric_limits<double>::min());
}

TEST_CASE("csv layout") {
  StudyRecord a;
  a.step = 0;
  a.n_dofs = 12;
  a.n_elements = 8;
  a.eta = 0.25;
  a.err_v_L2 = 0.125;
  a.err_sigma_L2 = 0.5;
  a.err_V = 1.0;
  a.seconds = 0.0;
  StudyRecord b = a;
  b.step = 1;
  b.err_v_L2.reset();
  b.err_sigma_L2.reset();
  b.err_V.reset();
  std::ostringstream os;
  const std::vector<StudyRecord> records = {a, b};
  write_csv(os, records);
  CHECK(os.str() ==
        "step,ndof,nelem,eta,err_v,err_sigma,err_V,seconds\n"
        "0,12,8,0.25,0.125,0.5,1,0\n"
        "1,12,8,0.25,,,,0\n");
}

TEST_CASE("run writes reproducible output") {
  RunConfig c;
  c.problem = BenchmarkId::Smooth1D;
  c.order = 2;
  c.mode = RefinementMode::Adaptive;
  c.max_dofs = 1500;
  c.out = temp_csv("a").string();
  std::ostringstream out1, err1, out2, err2;
  REQUIRE(run(c, out1, err1) == 0);
  const std::string first = read_file(c.out);
  REQUIRE(run(c, out2, err2) == 0);
  const std::string second = read_file(c.out);
  CHECK(without_seconds(first) == without_seconds(second));
  CHECK(first.rfind("step,ndof,nelem,eta,err_v,err_sigma,err_V,seconds\n", 0) == 0);
  CHECK(out1.str().find("slope ") != std::string::npos);
  CHECK(err1.str().empty());
  std::filesystem::remove(c.out);
}

TEST_CASE("run exit codes") {
  RunConfig c;
  c.max_dofs = 10;
  c.out = temp_csv("b").string();
  std::ostringstream out, err;
  CHECK(run(c, out, err) == 2);
  CHECK(err.str().find("--max-dofs") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(c.out));

  RunConfig d;
  d.max_dofs = 50;
  d.out = (std::filesystem::temp_directory_path() / "lswave_missing_dir" / "x.csv").string();
  std::ostringstream out2, err2;
  CHECK(run(d, out2, err2) == 1);
}

}  // TEST_SUITE
