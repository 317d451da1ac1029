#include <doctest.h>

#include <cmath>

#include "lwfr/equations.hpp"
#include "lwfr/manufactured.hpp"
#include "oracles.hpp"

using namespace lwfr;

TEST_SUITE_BEGIN("equations");

TEST_CASE("advdiff fluxes") {
  AdvDiff eq({1.5, 1.0, 0.05});
  double fa[2], fv[2];
  double grad0[2] = {0.0, 0.0};
  advdiff_fluxes(eq, 1.0, grad0, fa, fv);
  CHECK(fa[0] == doctest::Approx(1.5));
  CHECK(fa[1] == doctest::Approx(1.0));
  CHECK(fv[0] == 0.0);
  CHECK(fv[1] == 0.0);

  advdiff_fluxes(eq, 0.0, grad0, fa, fv);
  CHECK(fa[0] == 0.0);
  CHECK(fa[1] == 0.0);

  AdvDiff eq2({1.5, 1.0, 0.5});
  double grad[2] = {2.0, 0.0};
  advdiff_fluxes(eq2, 0.3, grad, fa, fv);
  CHECK(fv[0] == doctest::Approx(1.0));
  CHECK(fv[1] == doctest::Approx(0.0));
}

TEST_CASE("advdiff exact solution: initial condition and PDE residual") {
  AdvDiffParams p{1.5, 1.0, 0.05};
  AdvDiff eq(p);
  double u;
  eq.exact(0.3, -0.2, 0.0, &u);
  CHECK(u == doctest::Approx(1.0 + 0.5 * std::sin(M_PI * 0.1)).epsilon(1e-14));

  // PDE residual u_t + a.grad u - nu lap u by 6th-order central differences;
  // a finer step in t balances the large temporal derivatives
  const double h = 0.01, ht = 2e-3;
  const double c[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  const double c2[4] = {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
  auto val = [&](double x, double y, double t) {
    double v;
    eq.exact(x, y, t, &v);
    return v;
  };
  for (int s = 0; s < 20; ++s) {
    const double x = oracle::uniform(-1, 1), y = oracle::uniform(-1, 1),
                 t = oracle::uniform(0, 1);
    double ut = 0, ux = 0, uy = 0, uxx = c2[0] * val(x, y, t), uyy = uxx;
    for (int k = 1; k <= 3; ++k) {
      ut += c[k - 1] * (val(x, y, t + k * ht) - val(x, y, t - k * ht)) / ht;
      ux += c[k - 1] * (val(x + k * h, y, t) - val(x - k * h, y, t)) / h;
      uy += c[k - 1] * (val(x, y + k * h, t) - val(x, y - k * h, t)) / h;
      uxx += c2[k] * (val(x + k * h, y, t) + val(x - k * h, y, t));
      uyy += c2[k] * (val(x, y + k * h, t) + val(x, y - k * h, t));
    }
    uxx /= h * h;
    uyy /= h * h;
    const double res = ut + p.ax * ux + p.ay * uy - p.nu * (uxx + uyy);
    CHECK(std::abs(res) <= 1e-6 * h * h);
  }
}

TEST_CASE("navier-stokes: stagnant gas carries only pressure flux") {
  NavierStokes eq({1.4, 0.0, 0.72});
  const double p = 0.7;
  double u[4] = {1.0, 0.0, 0.0, p / 0.4};
  double fa[4][2], fv[4][2];
  double grad[8] = {0};
  navier_stokes_fluxes(eq, u, grad, fa, fv);
  CHECK(fa[0][0] == 0.0);
  CHECK(fa[1][0] == doctest::Approx(p).epsilon(1e-14));
  CHECK(fa[2][0] == 0.0);
  CHECK(fa[3][0] == 0.0);
  CHECK(fa[0][1] == 0.0);
  CHECK(fa[1][1] == 0.0);
  CHECK(fa[2][1] == doctest::Approx(p).epsilon(1e-14));
  CHECK(fa[3][1] == 0.0);
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 2; ++d) CHECK(fv[c][d] == 0.0);
}

TEST_CASE("navier-stokes: shear state stress") {
  const double mu = 0.01;
  NavierStokes eq({1.4, mu, 0.72});
  // v = (y, 0) at the point y=0.4: d(v1)/dy = 1, everything else zero
  const double rho = 1.3, y = 0.4, p = 2.0;
  double prim[4] = {rho, y, 0.0, p};
  double u[4];
  eq.conservative(prim, u);
  // conservative gradients for v=(y,0), rho,p constant in space:
  // d(rho v1)/dy = rho; dE/dy = rho*v1 (kinetic part)
  double grad[8] = {0};
  grad[2 * 1 + 1] = rho;       // d(rho v1)/dy
  grad[2 * 3 + 1] = rho * y;   // dE/dy
  double fa[4][2], fv[4][2];
  navier_stokes_fluxes(eq, u, grad, fa, fv);
  CHECK(fv[1][0] == doctest::Approx(0.0).epsilon(1e-14)); // tau11 = 0
  CHECK(fv[2][0] == doctest::Approx(mu).epsilon(1e-12));  // tau21 = mu
  CHECK(fv[1][1] == doctest::Approx(mu).epsilon(1e-12));  // tau12 = mu
  CHECK(fv[2][1] == doctest::Approx(0.0).epsilon(1e-14)); // tau22 = 0
}

TEST_CASE("navier-stokes: viscous flux vanishes for zero gradient") {
  NavierStokes eq({1.4, 0.02, 0.72});
  double prim[4] = {1.2, 0.3, -0.5, 0.9};
  double u[4];
  eq.conservative(prim, u);
  double grad[8] = {0};
  double fa[4][2], fv[4][2];
  navier_stokes_fluxes(eq, u, grad, fa, fv);
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 2; ++d) CHECK(std::abs(fv[c][d]) <= 1e-15);
}

TEST_CASE("non-physical state raises state error") {
  NavierStokes eq({1.4, 0.0, 0.72});
  double bad_rho[4] = {-1.0, 0.0, 0.0, 1.0};
  double grad[8] = {0};
  double fa[4][2], fv[4][2];
  CHECK_THROWS_AS(navier_stokes_fluxes(eq, bad_rho, grad, fa, fv), StateError);
  double bad_p[4] = {1.0, 10.0, 0.0, 1.0}; // kinetic energy exceeds total
  CHECK_THROWS_AS(navier_stokes_fluxes(eq, bad_p, grad, fa, fv), StateError);
  CHECK_THROWS_AS(eq.wave_speed(bad_rho, bad_rho, 1.0, 0.0), StateError);
}

TEST_CASE("wave speeds") {
  AdvDiff adv({1.5, 1.0, 0.0});
  CHECK(adv.wave_speed(nullptr, nullptr, 1.0, 0.0) == doctest::Approx(1.5));

  NavierStokes eq({1.4, 0.0, 0.72});
  double prim[4] = {1.0, 0.0, 0.0, 1.0 / 1.4};
  double u[4];
  eq.conservative(prim, u);
  CHECK(eq.wave_speed(u, u, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  // symmetry of the max
  double prim2[4] = {0.8, 0.4, -0.1, 1.1};
  double u2[4];
  eq.conservative(prim2, u2);
  const double n1 = 0.6, n2 = 0.8;
  CHECK(eq.wave_speed(u, u2, n1, n2) ==
        doctest::Approx(eq.wave_speed(u2, u, n1, n2)).epsilon(1e-15));
}

TEST_CASE("euler flux rotational consistency") {
  NavierStokes eq({1.4, 0.0, 0.72});
  for (int s = 0; s < 100; ++s) {
    double prim[4] = {oracle::uniform(0.5, 2.0), oracle::uniform(-1, 1),
                      oracle::uniform(-1, 1), oracle::uniform(0.5, 2.0)};
    double u[4];
    eq.conservative(prim, u);
    const double th = oracle::uniform(0, 2 * M_PI);
    const double ct = std::cos(th), st = std::sin(th);
    double nx = oracle::uniform(-1, 1), ny = oracle::uniform(-1, 1);
    const double nn = std::hypot(nx, ny);
    nx /= nn;
    ny /= nn;
    // rotated state and rotated normal
    double prim_r[4] = {prim[0], ct * prim[1] - st * prim[2],
                        st * prim[1] + ct * prim[2], prim[3]};
    double ur[4];
    eq.conservative(prim_r, ur);
    const double nxr = ct * nx - st * ny, nyr = st * nx + ct * ny;
    double f[4][2], fr[4][2];
    eq.flux_adv(u, f);
    eq.flux_adv(ur, fr);
    double fn[4], fnr[4];
    for (int c = 0; c < 4; ++c) {
      fn[c] = f[c][0] * nx + f[c][1] * ny;
      fnr[c] = fr[c][0] * nxr + fr[c][1] * nyr;
    }
    // normal flux transforms like the state: momentum rotates, scalars fixed
    CHECK(fnr[0] == doctest::Approx(fn[0]).epsilon(1e-12));
    CHECK(fnr[3] == doctest::Approx(fn[3]).epsilon(1e-12));
    CHECK(fnr[1] == doctest::Approx(ct * fn[1] - st * fn[2]).epsilon(1e-12));
    CHECK(fnr[2] == doctest::Approx(st * fn[1] + ct * fn[2]).epsilon(1e-12));
  }
}

TEST_CASE("viscous flux linear in the gradient argument") {
  NavierStokes ns({1.4, 0.013, 0.72});
  AdvDiff adv({1.0, 0.7, 0.3});
  for (int s = 0; s < 50; ++s) {
    double prim[4] = {oracle::uniform(0.5, 2.0), oracle::uniform(-1, 1),
                      oracle::uniform(-1, 1), oracle::uniform(0.5, 2.0)};
    double u[4];
    ns.conservative(prim, u);
    double g1[8], g2[8], gc[8];
    const double a = oracle::uniform(-2, 2), b = oracle::uniform(-2, 2);
    for (int i = 0; i < 8; ++i) {
      g1[i] = oracle::uniform(-1, 1);
      g2[i] = oracle::uniform(-1, 1);
      gc[i] = a * g1[i] + b * g2[i];
    }
    double f1[4][2], f2[4][2], fc[4][2], heat[2];
    ns.flux_visc(u, g1, f1, heat);
    ns.flux_visc(u, g2, f2, heat);
    ns.flux_visc(u, gc, fc, heat);
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 2; ++d)
        CHECK(fc[c][d] == doctest::Approx(a * f1[c][d] + b * f2[c][d])
                              .epsilon(1e-12)
                              .scale(1.0));
    double s1[1][2], s2[1][2], sc[1][2];
    adv.flux_visc(u, g1, s1, nullptr);
    adv.flux_visc(u, g2, s2, nullptr);
    adv.flux_visc(u, gc, sc, nullptr);
    for (int d = 0; d < 2; ++d)
      CHECK(sc[0][d] == doctest::Approx(a * s1[0][d] + b * s2[0][d]).epsilon(1e-12));
  }
}

TEST_CASE("conservative/primitive round trip") {
  NavierStokes eq({1.4, 0.0, 0.72});
  for (int s = 0; s < 50; ++s) {
    double prim[4] = {oracle::uniform(0.3, 3.0), oracle::uniform(-2, 2),
                      oracle::uniform(-2, 2), oracle::uniform(0.3, 3.0)};
    double u[4], back[4];
    eq.conservative(prim, u);
    REQUIRE(eq.primitive(u, back));
    for (int c = 0; c < 4; ++c)
      CHECK(back[c] == doctest::Approx(prim[c]).epsilon(1e-14));
  }
}

TEST_CASE("manufactured source agrees with an independent FD residual") {
  NavierStokesParams params{1.4, 0.01, 0.72};
  NavierStokes eq(params);
  eq.set_manufactured(2.0, 0.1);
  const double c = 2.0, A = 0.1;

  // fully finite-difference residual: gradients of the closed-form state by
  // nested 6th-order central differences (no analytic derivatives anywhere)
  const double h = 5e-3, hg = 5e-3;
  const double w[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  auto state = [&](double x, double y, double t, double* u) {
    mms::state(c, A, params.gamma, x, y, t, u);
  };
  auto flux = [&](double x, double y, double t, int d, double* out) {
    double u[4], up[4], um[4], grad[8];
    state(x, y, t, u);
    for (int k = 0; k < 8; ++k) grad[k] = 0.0;
    for (int k = 1; k <= 3; ++k) {
      state(x + k * hg, y, t, up);
      state(x - k * hg, y, t, um);
      for (int cc = 0; cc < 4; ++cc) grad[2 * cc] += w[k - 1] * (up[cc] - um[cc]) / hg;
      state(x, y + k * hg, t, up);
      state(x, y - k * hg, t, um);
      for (int cc = 0; cc < 4; ++cc) grad[2 * cc + 1] += w[k - 1] * (up[cc] - um[cc]) / hg;
    }
    double fa[4][2], fv[4][2], heat[2];
    eq.flux_adv(u, fa);
    eq.flux_visc(u, grad, fv, heat);
    for (int cc = 0; cc < 4; ++cc) out[cc] = fa[cc][d] - fv[cc][d];
  };
  for (int s = 0; s < 12; ++s) {
    const double x = oracle::uniform(-0.9, 0.9), y = oracle::uniform(-0.9, 0.9),
                 t = oracle::uniform(0.0, 1.0);
    double res[4] = {0, 0, 0, 0};
    double up[4], um[4], fp[4], fm[4];
    for (int k = 1; k <= 3; ++k) {
      state(x, y, t + k * h, up);
      state(x, y, t - k * h, um);
      for (int cc = 0; cc < 4; ++cc) res[cc] += w[k - 1] * (up[cc] - um[cc]) / h;
      flux(x + k * h, y, t, 0, fp);
      flux(x - k * h, y, t, 0, fm);
      for (int cc = 0; cc < 4; ++cc) res[cc] += w[k - 1] * (fp[cc] - fm[cc]) / h;
      flux(x, y + k * h, t, 1, fp);
      flux(x, y - k * h, t, 1, fm);
      for (int cc = 0; cc < 4; ++cc) res[cc] += w[k - 1] * (fp[cc] - fm[cc]) / h;
    }
    double src[4];
    eq.source(x, y, t, src);
    for (int cc = 0; cc < 4; ++cc)
      CHECK(std::abs(src[cc] - res[cc]) <= 1e-6);
  }
}

TEST_SUITE_END();
