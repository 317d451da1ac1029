#include <doctest.h>

#include <cmath>

#include "lwfr/boundary.hpp"
#include "lwfr/solver.hpp"
#include "oracles.hpp"

using namespace lwfr;

TEST_SUITE_BEGIN("boundary");

TEST_CASE("moving lid mirror") {
  NavierStokes eq({1.4, 0.001, 0.7});
  BoundaryTag tag;
  tag.kind = BoundaryKind::moving_wall_isothermal;
  tag.wall_velocity = {1.0, 0.0};
  tag.wall_temperature = 1.0 / (0.01 * 1.4); // cavity normalization
  double prim[4] = {1.0, 0.4, 0.0, 1.0 / (0.01 * 1.4)};
  double inner[4], outer[4], back[4];
  eq.conservative(prim, inner);
  boundary_solution_trace(eq, tag, inner, 0.5, 1.0, 0.0, outer);
  double pout[4];
  REQUIRE(eq.primitive(outer, pout));
  CHECK(pout[1] == doctest::Approx(1.6).epsilon(1e-13));
  CHECK(pout[2] == doctest::Approx(0.0));
  CHECK(pout[0] == doctest::Approx(1.0));
  // u* velocity is the wall velocity
  double ustar[4];
  interface_solution_average(inner, outer, 4, ustar);
  CHECK(ustar[1] / ustar[0] == doctest::Approx(1.0).epsilon(1e-13));
  // involution
  boundary_solution_trace(eq, tag, outer, 0.5, 1.0, 0.0, back);
  for (int c = 0; c < 4; ++c)
    CHECK(back[c] == doctest::Approx(inner[c]).epsilon(1e-13));
}

TEST_CASE("adiabatic wall copies the thermodynamic state") {
  NavierStokes eq({1.4, 0.001, 0.7});
  BoundaryTag tag;
  tag.kind = BoundaryKind::noslip_adiabatic;
  double prim[4] = {1.3, 0.2, -0.1, 2.0};
  double inner[4], outer[4], pout[4];
  eq.conservative(prim, inner);
  boundary_solution_trace(eq, tag, inner, 0.0, 0.0, 0.0, outer);
  REQUIRE(eq.primitive(outer, pout));
  CHECK(pout[0] == doctest::Approx(1.3));
  CHECK(pout[1] == doctest::Approx(-0.2).epsilon(1e-13));
  CHECK(pout[2] == doctest::Approx(0.1).epsilon(1e-13));
  // T = p/rho copied
  CHECK(pout[3] / pout[0] == doctest::Approx(prim[3] / prim[0]).epsilon(1e-13));
  // involution for all wall kinds
  for (auto kind : {BoundaryKind::noslip_isothermal, BoundaryKind::noslip_adiabatic,
                    BoundaryKind::moving_wall_isothermal}) {
    BoundaryTag t2;
    t2.kind = kind;
    t2.wall_velocity = {0.7, -0.2};
    t2.wall_temperature = 1.9;
    double out1[4], out2[4];
    boundary_solution_trace(eq, t2, inner, 0.0, 0.0, 0.0, out1);
    boundary_solution_trace(eq, t2, out1, 0.0, 0.0, 0.0, out2);
    for (int c = 0; c < 4; ++c)
      CHECK(out2[c] == doctest::Approx(inner[c]).epsilon(1e-12));
  }
}

TEST_CASE("dirichlet with matching data returns the inner trace") {
  AdvDiff eq({1.5, 1.0, 0.05});
  BoundaryTag tag;
  tag.kind = BoundaryKind::dirichlet_exact;
  const double x = 0.3, y = -1.0, t = 0.2;
  double g, outer;
  eq.exact(x, y, t, &g);
  boundary_solution_trace(eq, tag, &g, x, y, t, &outer);
  CHECK(outer == doctest::Approx(g).epsilon(1e-15));
}

TEST_CASE("steady no-slip wall produces zero mass flux in the Rusanov form") {
  NavierStokes eq({1.4, 0.001, 0.7});
  BoundaryTag tag;
  tag.kind = BoundaryKind::noslip_isothermal;
  tag.wall_velocity = {0.0, 0.0};
  tag.wall_temperature = 2.0;
  // inner trace with some velocity toward the wall (normal (0,1))
  double prim[4] = {1.1, 0.3, 0.25, 2.2};
  double U_in[4];
  eq.conservative(prim, U_in);
  double met[4] = {1.0, 0.0, 0.0, 1.0}; // identity metrics at the face point
  double fa_in[4], fv_in[4], fa_out[4], fv_out[4], U_out[4];
  {
    double f[4][2];
    eq.flux_adv(U_in, f);
    for (int c = 0; c < 4; ++c) {
      fa_in[c] = f[c][1]; // dir = 1 trace
      fv_in[c] = 0.0;
    }
  }
  boundary_flux_traces(eq, tag, fa_in, fv_in, U_in, 0.0, 0.0, 1.0, 0.0, 0.01,
                       met, 1, fa_out, fv_out, U_out);
  const double lam = eq.wave_speed(U_in, U_out, 0.0, 1.0);
  double fstar[4];
  rusanov_timeavg_flux(fa_in, fa_out, U_in, U_out, lam, 4, fstar);
  CHECK(std::abs(fstar[0]) <= 1e-12); // mass row vanishes for a steady wall
}

TEST_CASE("inflow profile prescribes the interface state") {
  NavierStokes eq({1.4, 0.001, 0.72});
  BoundaryTag tag;
  tag.kind = BoundaryKind::inflow_profile;
  tag.inflow_primitive = {1.2, 0.8, 0.0, 2.0};
  double g[4];
  eq.conservative(tag.inflow_primitive.data(), g);
  double inner[4] = {1.0, 0.1, 0.0, 3.0};
  double outer[4], ustar[4];
  boundary_solution_trace(eq, tag, inner, 0.0, 0.5, 0.1, outer);
  interface_solution_average(inner, outer, 4, ustar);
  for (int c = 0; c < 4; ++c)
    CHECK(ustar[c] == doctest::Approx(g[c]).epsilon(1e-14));
}

TEST_CASE("unknown-to-advdiff wall kind is rejected") {
  AdvDiff eq({1.0, 1.0, 0.0});
  BoundaryTag tag;
  tag.kind = BoundaryKind::noslip_adiabatic;
  double u = 1.0, outer;
  CHECK_THROWS_AS(boundary_solution_trace(eq, tag, &u, 0, 0, 0, &outer),
                  ConfigError);
}

TEST_CASE("cavity initial condition matches the reference values") {
  NavierStokes eq({1.4, 0.001, 0.7});
  const double Minf = 0.1;
  double prim[4] = {1.0, 0.0, 0.0, 1.0 / (Minf * Minf * 1.4)};
  double u[4];
  eq.conservative(prim, u);
  CHECK(u[0] == 1.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == 0.0);
  CHECK(u[3] == doctest::Approx(prim[3] / 0.4).epsilon(1e-15));
  // sound speed 1/Minf
  double p[4];
  REQUIRE(eq.primitive(u, p));
  CHECK(eq.sound_speed(p) == doctest::Approx(1.0 / Minf).epsilon(1e-13));
}

TEST_SUITE_END();
