#include <doctest.h>

#include <cmath>

#include "lwfr/equations.hpp"
#include "lwfr/mesh.hpp"
#include "lwfr/time_control.hpp"
#include "oracles.hpp"

using namespace lwfr;

TEST_SUITE_BEGIN("time_control");

TEST_CASE("embedded error estimate closed forms") {
  Basis1D b(2);
  auto mesh = make_cartesian_mesh(3, 3, Rect{-1, 1, -1, 1}, b);
  auto geom = compute_metrics(mesh, b);
  NodalField hi(9, 9, 2), lo(9, 9, 2), prev(9, 9, 2);
  for (std::size_t i = 0; i < hi.v.size(); ++i) {
    hi.v[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
    lo.v[i] = hi.v[i];
    prev.v[i] = hi.v[i];
  }
  CHECK(embedded_error_estimate(hi, lo, prev, geom, b, 1e-8, 1e-8) == 0.0);

  // uniform difference with rel_tol = 0: e = delta / abs_tol
  const double delta = 3e-7, atol = 1e-6;
  for (std::size_t i = 0; i < lo.v.size(); ++i) lo.v[i] = hi.v[i] - delta;
  const double e = embedded_error_estimate(hi, lo, prev, geom, b, atol, 1e-300);
  CHECK(e == doctest::Approx(delta / atol).epsilon(1e-10));

  // doubling both tolerances halves e
  const double e1 = embedded_error_estimate(hi, lo, prev, geom, b, 1e-6, 1e-6);
  const double e2 = embedded_error_estimate(hi, lo, prev, geom, b, 2e-6, 2e-6);
  CHECK(e2 == doctest::Approx(0.5 * e1).epsilon(1e-12));
}

TEST_CASE("controller fixed point") {
  ControllerState ctrl;
  ctrl.dt = 0.1;
  ctrl.order_khat = 3;
  const auto p = propose_step(ctrl, 1.0);
  CHECK(p.accept);
  CHECK(p.dt_next == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(ctrl.accepted == 1);
}

TEST_CASE("controller rejection arithmetic") {
  ControllerState ctrl;
  ctrl.dt = 0.1;
  ctrl.order_khat = 2;
  ctrl.beta1 = 0.6;
  ctrl.beta2 = -0.2;
  ctrl.beta3 = 0.0;
  ctrl.err_n = 1.0;
  ctrl.err_nm1 = 1.0;
  const auto p = propose_step(ctrl, 8.0);
  CHECK_FALSE(p.accept);
  const double raw = std::pow(1.0 / 8.0, 0.6 / 2.0); // about 0.536
  CHECK(raw == doctest::Approx(0.536).epsilon(2e-3));
  const double lim = 1.0 + std::atan(raw - 1.0); // about 0.566
  CHECK(p.dt_next == doctest::Approx(0.1 * lim).epsilon(1e-12));
  CHECK(ctrl.rejected == 1);
  CHECK(ctrl.consecutive_rejects == 1);
  // history not advanced on reject
  CHECK(ctrl.err_n == 1.0);
}

TEST_CASE("growth bounded by the limiter") {
  ControllerState ctrl;
  ctrl.dt = 1.0;
  ctrl.order_khat = 4;
  const auto p = propose_step(ctrl, 1e-300); // floored at 1e-12
  CHECK(p.accept);
  CHECK(p.dt_next <= 1.0 + M_PI / 2.0 + 1e-12);
  CHECK(p.dt_next > 2.0);
}

TEST_CASE("dt_max caps the proposal") {
  ControllerState ctrl;
  ctrl.dt = 1.0;
  ctrl.dt_max = 1.5;
  const auto p = propose_step(ctrl, 1e-12);
  CHECK(p.dt_next == doctest::Approx(1.5));
}

TEST_CASE("non-finite estimate halves the step") {
  ControllerState ctrl;
  ctrl.dt = 0.2;
  const auto p = propose_step(ctrl, std::numeric_limits<double>::quiet_NaN());
  CHECK_FALSE(p.accept);
  CHECK(p.dt_next == doctest::Approx(0.1));
}

TEST_CASE("history shifts on accept") {
  ControllerState ctrl;
  ctrl.dt = 0.1;
  propose_step(ctrl, 0.5);
  CHECK(ctrl.err_n == doctest::Approx(0.5));
  CHECK(ctrl.err_nm1 == doctest::Approx(1.0));
  propose_step(ctrl, 0.25);
  CHECK(ctrl.err_n == doctest::Approx(0.25));
  CHECK(ctrl.err_nm1 == doctest::Approx(0.5));
}

TEST_CASE("fixed cfl step") {
  Basis1D b(2);
  auto mesh = make_cartesian_mesh(4, 4, Rect{-1, 1, -1, 1}, b);
  auto geom = compute_metrics(mesh, b);
  NodalField u(16, 9, 1);
  u.fill(1.0);

  // pure advection ignores the viscous bound
  AdvDiff adv({2.0, 1.0, 0.0});
  const double dta = fixed_cfl_step(u, geom, adv, 2, 1.0, 1.0);
  // h = sqrt(J) = 0.25, lambda_max = 2, (2N+1) = 5
  CHECK(dta == doctest::Approx(0.25 / (5.0 * 2.0)).epsilon(1e-12));

  // halving h halves dt for nu = 0
  auto mesh2 = make_cartesian_mesh(8, 8, Rect{-1, 1, -1, 1}, b);
  auto geom2 = compute_metrics(mesh2, b);
  NodalField u2(64, 9, 1);
  u2.fill(1.0);
  const double dta2 = fixed_cfl_step(u2, geom2, adv, 2, 1.0, 1.0);
  CHECK(dta2 == doctest::Approx(0.5 * dta).epsilon(1e-12));

  // diffusion bound
  AdvDiff dif({2.0, 1.0, 0.5});
  const double dtv = fixed_cfl_step(u, geom, dif, 2, 1.0, 1.0);
  CHECK(dtv == doctest::Approx(std::min(dta, 0.0625 / (25.0 * 0.5))).epsilon(1e-12));
}

TEST_SUITE_END();
