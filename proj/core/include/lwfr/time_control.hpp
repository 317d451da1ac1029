#pragma once

#include <cmath>
#include <limits>

#include "lwfr/basis.hpp"
#include "lwfr/field.hpp"
#include "lwfr/geometry.hpp"

namespace lwfr {

/// Error-based step controller state: tolerances, gain triple, error history
/// and bookkeeping. History is initialized to 1.
struct ControllerState {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  double beta1 = 0.6, beta2 = -0.2, beta3 = 0.0;
  int order_khat = 2; // k-hat, N + 1
  bool limiter = true;
  double dt = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();
  double err_n = 1.0, err_nm1 = 1.0; // accepted-step error history
  long accepted = 0, rejected = 0;
  int consecutive_rejects = 0;
};

struct StepProposal {
  bool accept = false;
  double dt_next = 0.0;
};

/// Accept iff e <= 1; next step from the three-term controller
/// dt * kappa((1/e)^(b1/k) (1/eps_n)^(b2/k) (1/eps_{n-1})^(b3/k)) with the
/// smooth limiter kappa(x) = 1 + atan(x - 1). e is floored at 1e-12; a
/// non-finite e rejects with dt/2. History advances only on accept.
StepProposal propose_step(ControllerState& ctrl, double e);

/// Weighted RMS embedded error estimate:
/// sqrt( sum w J |u_hi - u_lo|^2 / s^2 / (p sum w J) ) with the componentwise
/// scale s = abs_tol + rel_tol * max(|u_prev|, |u_hi|).
double embedded_error_estimate(const NodalField& u_high,
                               const NodalField& u_low,
                               const NodalField& u_prev,
                               const GeometryField& geom, const Basis1D& basis,
                               double abs_tol, double rel_tol);

/// CFL-style step for convergence studies: the minimum over nodes of
/// cfl_a h / ((2N+1) lambda) and cfl_v h^2 / ((2N+1)^2 nu), h = sqrt(J).
/// A vanishing wave speed or diffusion scale drops the respective bound.
template <class Eq>
double fixed_cfl_step(const NodalField& u, const GeometryField& geom,
                      const Eq& eq, int degree, double cfl_a, double cfl_v) {
  double dt = std::numeric_limits<double>::infinity();
  const double pa = 2.0 * degree + 1.0;
  for (int e = 0; e < u.ne; ++e)
    for (int n = 0; n < u.nn; ++n) {
      const double jac = geom.J(e, n);
      const double lam = eq.max_wave_speed(u.at(e, n));
      if (lam > 0.0) dt = std::min(dt, cfl_a * std::sqrt(jac) / (pa * lam));
      const double nu = eq.diffusion_scale(u.at(e, n));
      if (nu > 0.0) dt = std::min(dt, cfl_v * jac / (pa * pa * nu));
    }
  return dt;
}

} // namespace lwfr
