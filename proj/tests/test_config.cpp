#include <doctest.h>

#include <string>

#include "lwfr/config.hpp"
#include "lwfr/errors.hpp"

using namespace lwfr;

TEST_SUITE_BEGIN("config");

namespace {
const char* minimal = R"(
[equation]
system = advdiff

[mesh]
nx = 8

[time]
t_final = 1.0
)";
}

TEST_CASE("minimal config parses with defaults") {
  const RunConfig cfg = parse_config(minimal);
  CHECK(cfg.system == SystemKind::advdiff);
  CHECK(cfg.nx == 8);
  CHECK(cfg.ny == 8);
  CHECK(cfg.degree == 2);
  CHECK(cfg.mode == TimeMode::adaptive);
  CHECK(cfg.abs_tol == 1e-8);
  CHECK(cfg.periodic_x());
  CHECK(cfg.periodic_y());
  CHECK(cfg.out_dir == "out");
}

TEST_CASE("degree zero names its line") {
  const std::string text = std::string(minimal) + "\n[mesh2]\n";
  try {
    parse_config(R"([equation]
system = advdiff

[mesh]
nx = 8
degree = 0

[time]
t_final = 1.0
)");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 6") != std::string::npos);
    CHECK(msg.find("degree") != std::string::npos);
  }
}

TEST_CASE("duplicate section is an error") {
  CHECK_THROWS_AS(parse_config(R"([equation]
system = advdiff
[equation]
system = advdiff
[mesh]
nx = 4
[time]
t_final = 1.0
)"),
                  ConfigError);
}

TEST_CASE("unknown key and missing key are reported together") {
  try {
    parse_config(R"([equation]
system = advdiff
frobnicate = 3
[mesh]
ny = 4
[time]
t_final = 1.0
)");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("frobnicate") != std::string::npos);
    CHECK(msg.find("'nx'") != std::string::npos);
  }
}

TEST_CASE("type mismatch is reported with its line") {
  try {
    parse_config(R"([equation]
system = advdiff
[mesh]
nx = four
[time]
t_final = 1.0
)");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("wall boundaries require navier-stokes") {
  CHECK_THROWS_AS(parse_config(R"([equation]
system = advdiff
[mesh]
nx = 4
[time]
t_final = 1.0
[boundary]
all = noslip_adiabatic
)"),
                  ConfigError);
}

TEST_CASE("periodic pairing is enforced") {
  CHECK_THROWS_AS(parse_config(R"([equation]
system = advdiff
[mesh]
nx = 4
[time]
t_final = 1.0
[boundary]
left = periodic
right = dirichlet_exact
bottom = periodic
top = periodic
)"),
                  ConfigError);
}

TEST_CASE("cavity config") {
  const RunConfig cfg = parse_config(R"(
[equation]
system = navier_stokes
gamma = 1.4
mu = 0.001
prandtl = 0.7
initial = constant
state = 1.0 0.0 0.0 71.42857142857143

[mesh]
nx = 16
degree = 3
xmin = 0.0
xmax = 1.0
ymin = 0.0
ymax = 1.0

[time]
mode = adaptive
t_final = 30.0

[boundary]
all = noslip_isothermal
top = moving_wall_isothermal
wall_velocity = 1.0 0.0
wall_temperature = 71.42857142857143
)");
  CHECK(cfg.system == SystemKind::navier_stokes);
  CHECK(cfg.bc.side[3].kind == BoundaryKind::moving_wall_isothermal);
  CHECK(cfg.bc.side[0].kind == BoundaryKind::noslip_isothermal);
  CHECK(cfg.bc.side[3].wall_velocity[0] == 1.0);
  CHECK(cfg.bc.side[0].wall_temperature == doctest::Approx(71.42857142857143));
  CHECK(!cfg.periodic_x());
}

TEST_CASE("manufactured source requires navier-stokes") {
  CHECK_THROWS_AS(parse_config(R"([equation]
system = advdiff
source = manufactured
[mesh]
nx = 4
[time]
t_final = 1.0
)"),
                  ConfigError);
}

TEST_SUITE_END();
