#include "lwfr/manufactured.hpp"

#include <cmath>

#include "lwfr/equations.hpp"

namespace lwfr {
namespace mms {

namespace {

struct Prim {
  double rho, v, p;       // v1 = v2 = v
  double rho_x, rho_y, rho_t;
  double v_x, v_y, v_t;
};

Prim primitive_fields(double c, double A, double x, double y, double t) {
  const double pi = M_PI;
  const double sx = std::sin(pi * x), cx = std::cos(pi * x);
  const double sy = std::sin(pi * y), cy = std::cos(pi * y);
  const double st = std::sin(pi * t), ct = std::cos(pi * t);
  const double L = std::log(y + 2.0), Lp = 1.0 / (y + 2.0);
  const double E = 1.0 - std::exp(-A * (y - 2.0));
  const double Ep = A * std::exp(-A * (y - 2.0));
  Prim f;
  f.rho = c + A * sx * cy * ct;
  f.rho_x = A * pi * cx * cy * ct;
  f.rho_y = -A * pi * sx * sy * ct;
  f.rho_t = -A * pi * sx * cy * st;
  f.v = sx * L * E * ct;
  f.v_x = pi * cx * L * E * ct;
  f.v_y = sx * (Lp * E + L * Ep) * ct;
  f.v_t = -pi * sx * L * E * st;
  f.p = f.rho * f.rho;
  return f;
}

void conservative_from(const Prim& f, double gamma, double u[4]) {
  u[0] = f.rho;
  u[1] = f.rho * f.v;
  u[2] = f.rho * f.v;
  u[3] = f.p / (gamma - 1.0) + f.rho * f.v * f.v;
}

} // namespace

void state(double c, double A, double gamma, double x, double y, double t,
           double u[4]) {
  conservative_from(primitive_fields(c, A, x, y, t), gamma, u);
}

void state_derivs(double c, double A, double gamma, double x, double y,
                  double t, double u[4], double ux[4], double uy[4],
                  double ut[4]) {
  const Prim f = primitive_fields(c, A, x, y, t);
  conservative_from(f, gamma, u);
  const double gm1 = gamma - 1.0;
  auto fill = [&](double rd, double vd, double* out) {
    out[0] = rd;
    out[1] = rd * f.v + f.rho * vd;
    out[2] = out[1];
    // E = rho^2/(gm1) + rho v^2
    out[3] = 2.0 * f.rho * rd / gm1 + rd * f.v * f.v + 2.0 * f.rho * f.v * vd;
  };
  fill(f.rho_x, f.v_x, ux);
  fill(f.rho_y, f.v_y, uy);
  fill(f.rho_t, f.v_t, ut);
}

void source(const NavierStokes& eq, double c, double A, double x, double y,
            double t, double s[4]) {
  const double gamma = eq.params().gamma;
  // combined physical flux F_d = f^a_d - f^v_d from the analytic state/gradient
  auto flux = [&](double xx, double yy, int d, double out[4]) {
    double u[4], ux[4], uy[4], ut[4];
    state_derivs(c, A, gamma, xx, yy, t, u, ux, uy, ut);
    double grad[8];
    for (int k = 0; k < 4; ++k) {
      grad[2 * k] = ux[k];
      grad[2 * k + 1] = uy[k];
    }
    double fa[4][2], fv[4][2], heat[2];
    eq.flux_adv(u, fa);
    eq.flux_visc(u, grad, fv, heat);
    for (int k = 0; k < 4; ++k) out[k] = fa[k][d] - fv[k][d];
  };
  const double h = 1e-3;
  double fp2[4], fp1[4], fm1[4], fm2[4], ut_only[4], u[4], ux[4], uy[4];
  state_derivs(c, A, gamma, x, y, t, u, ux, uy, ut_only);
  // s = u_t + d/dx F_1 + d/dy F_2 (4th-order central differences)
  flux(x + 2 * h, y, 0, fp2);
  flux(x + h, y, 0, fp1);
  flux(x - h, y, 0, fm1);
  flux(x - 2 * h, y, 0, fm2);
  for (int k = 0; k < 4; ++k)
    s[k] = ut_only[k] + (-fp2[k] + 8.0 * fp1[k] - 8.0 * fm1[k] + fm2[k]) / (12.0 * h);
  flux(x, y + 2 * h, 1, fp2);
  flux(x, y + h, 1, fp1);
  flux(x, y - h, 1, fm1);
  flux(x, y - 2 * h, 1, fm2);
  for (int k = 0; k < 4; ++k)
    s[k] += (-fp2[k] + 8.0 * fp1[k] - 8.0 * fm1[k] + fm2[k]) / (12.0 * h);
}

} // namespace mms

void NavierStokes::set_manufactured(double c, double A) {
  exact_kind_ = ExactKind::manufactured;
  mms_c_ = c;
  mms_A_ = A;
}

void NavierStokes::exact(double x, double y, double t, double* u) const {
  if (exact_kind_ == ExactKind::constant) {
    for (int k = 0; k < 4; ++k) u[k] = const_state_[k];
  } else if (exact_kind_ == ExactKind::manufactured) {
    mms::state(mms_c_, mms_A_, p_.gamma, x, y, t, u);
  } else {
    throw ConfigError("Navier-Stokes run has no exact solution configured");
  }
}

void NavierStokes::source(double x, double y, double t, double* s) const {
  mms::source(*this, mms_c_, mms_A_, x, y, t, s);
}

} // namespace lwfr
