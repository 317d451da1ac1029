#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lwfr/driver.hpp"
#include "oracles.hpp"

using namespace lwfr;

TEST_SUITE_BEGIN("driver");

namespace {

RunConfig advdiff_base() {
  RunConfig cfg = parse_config(R"(
[equation]
system = advdiff
advection = 1.5 1.0
nu = 0.05

[mesh]
nx = 8
degree = 2

[time]
mode = fixed_cfl
t_final = 0.25
cfl_a = 0.4
cfl_v = 0.8
)");
  return cfg;
}

} // namespace

TEST_CASE("error norm closed forms") {
  Basis1D b(2);
  auto mesh = make_cartesian_mesh(4, 4, Rect{-1, 1, -1, 1}, b);
  auto geom = compute_metrics(mesh, b);
  NodalField u(16, 9, 1);
  for (int e = 0; e < 16; ++e)
    for (int n = 0; n < 9; ++n)
      u.at(e, n)[0] = std::sin(mesh.x(e, n)) + mesh.y(e, n);
  // field sampled from "exact": zero error
  auto err = compute_error_norm(u, mesh, geom, b, [](double x, double y, double* v) {
    v[0] = std::sin(x) + y;
  });
  CHECK(err[0] <= 1e-15);
  // constant offset: the normalized error equals the offset
  for (auto& v : u.v) v += 0.125;
  err = compute_error_norm(u, mesh, geom, b, [](double x, double y, double* v) {
    v[0] = std::sin(x) + y;
  });
  CHECK(err[0] == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("zero final time returns the initial condition") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.0;
  RunOptions opt;
  opt.suppress_output = true;
  const SimResult sim = run_simulation(cfg, opt);
  CHECK(sim.stats.accepted == 0);
  CHECK(sim.stats.final_time == 0.0);
  AdvDiff eq(cfg.advdiff);
  for (int e = 0; e < sim.state.ne; ++e)
    for (int n = 0; n < sim.state.nn; ++n) {
      double v;
      eq.exact(sim.mesh.x(e, n), sim.mesh.y(e, n), 0.0, &v);
      CHECK(sim.state.at(e, n)[0] == v);
    }
}

TEST_CASE("final time is hit exactly") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.0503; // not a step multiple
  RunOptions opt;
  opt.suppress_output = true;
  const SimResult sim = run_simulation(cfg, opt);
  CHECK(sim.stats.final_time == 0.0503);
}

TEST_CASE("adaptive run reaches t_final and controls the error") {
  RunConfig cfg = advdiff_base();
  cfg.mode = TimeMode::adaptive;
  cfg.t_final = 0.2;
  RunOptions opt;
  opt.suppress_output = true;
  const SimResult sim = run_simulation(cfg, opt);
  CHECK(sim.stats.final_time == 0.2);
  CHECK(sim.stats.accepted > 0);
  CHECK(sim.stats.every_accepted_e_le_one);
  const auto err = error_vs_exact(cfg, sim);
  CHECK(err[0] < 1e-2);
}

TEST_CASE("run is deterministic") {
  RunConfig cfg = advdiff_base();
  cfg.mode = TimeMode::adaptive;
  cfg.t_final = 0.1;
  RunOptions opt;
  opt.suppress_output = true;
  const SimResult a = run_simulation(cfg, opt);
  const SimResult b = run_simulation(cfg, opt);
  REQUIRE(a.state.v.size() == b.state.v.size());
  for (std::size_t i = 0; i < a.state.v.size(); ++i)
    CHECK(a.state.v[i] == b.state.v[i]);
  CHECK(a.stats.accepted == b.stats.accepted);
  CHECK(a.stats.rejected == b.stats.rejected);
}

TEST_CASE("convergence study csv schema") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.05;
  const auto rep = convergence_study(cfg, {4, 8}, {1, 2});
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].degree == 1);
  CHECK_FALSE(rep.rows[0].has_eoc);
  CHECK(rep.rows[1].has_eoc);
  std::ostringstream os;
  write_eoc_csv(os, rep);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "degree,nx,l2_error,eoc");
  std::string row;
  std::getline(is, row);
  // first row: empty eoc column (trailing comma)
  CHECK(row.back() == ',');
  CHECK(row.find("1,4,") == 0);
}

TEST_CASE("single resolution study has an empty eoc column") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.02;
  const auto rep = convergence_study(cfg, {4}, {2});
  REQUIRE(rep.rows.size() == 1);
  CHECK_FALSE(rep.rows[0].has_eoc);
}

TEST_CASE("study rows continue after a failed run") {
  RunConfig cfg = parse_config(R"(
[equation]
system = navier_stokes
mu = 0.01
source = manufactured

[mesh]
nx = 4
degree = 2

[time]
mode = fixed_cfl
t_final = 50.0
max_steps = 3
cfl_a = 500.0
cfl_v = 500.0
)");
  // the huge CFL factors drive the Taylor states non-physical -> StateError
  const auto rep = convergence_study(cfg, {4}, {2});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].failed);
  CHECK(std::isnan(rep.rows[0].l2_error));
}

TEST_CASE("study outputs are bit-identical across repeats") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.05;
  std::string csv[2];
  for (int r = 0; r < 2; ++r) {
    const auto rep = convergence_study(cfg, {4, 8}, {1, 2});
    std::ostringstream os;
    write_eoc_csv(os, rep);
    csv[r] = os.str();
  }
  CHECK(csv[0] == csv[1]);
}

TEST_CASE("field dumps and step log land in the output directory") {
  RunConfig cfg = advdiff_base();
  cfg.t_final = 0.02;
  cfg.dump_interval = 2;
  cfg.log_steps = true;
  const std::string dir = "test_out_tmp";
  std::filesystem::remove_all(dir);
  RunOptions opt;
  opt.out_dir = dir;
  const SimResult sim = run_simulation(cfg, opt);
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "field_0.txt"));
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "steps.log"));
  std::ifstream log(std::filesystem::path(dir) / "steps.log");
  std::string word;
  log >> word;
  CHECK(word == "step");
  long n;
  double t, dt, e;
  int acc;
  log >> n >> t >> dt >> e >> acc;
  CHECK(n == 1);
  CHECK(acc == 1);
  std::filesystem::remove_all(dir);
}

TEST_SUITE_END();
