#pragma once

namespace lwfr {

class NavierStokes;

/// Time-periodic manufactured Navier-Stokes solution on [-1,1]^2:
///   rho = c + A sin(pi x) cos(pi y) cos(pi t)
///   v1  = v2 = sin(pi x) log(y+2) (1 - exp(-A (y-2))) cos(pi t)
///   p   = rho^2
/// Periodic in x; horizontal boundaries take prescribed (dirichlet) data.
namespace mms {

/// conservative state at (x,y,t)
void state(double c, double A, double gamma, double x, double y, double t,
           double u[4]);

/// conservative state and its analytic first derivatives
void state_derivs(double c, double A, double gamma, double x, double y,
                  double t, double u[4], double ux[4], double uy[4],
                  double ut[4]);

/// PDE residual of the exact solution, s = u_t + div f^a - div f^v, with the
/// spatial divergences assembled by 4th-order central differences of the flux
/// evaluated from the analytic state and gradient.
void source(const NavierStokes& eq, double c, double A, double x, double y,
            double t, double s[4]);

} // namespace mms
} // namespace lwfr
