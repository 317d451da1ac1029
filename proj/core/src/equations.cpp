#include "lwfr/equations.hpp"

namespace lwfr {

void advdiff_fluxes(const AdvDiff& eq, double u, const double grad[2],
                    double fa[2], double fv[2]) {
  double f[1][2];
  eq.flux_adv(&u, f);
  fa[0] = f[0][0];
  fa[1] = f[0][1];
  eq.flux_visc(&u, grad, f, nullptr);
  fv[0] = f[0][0];
  fv[1] = f[0][1];
}

void navier_stokes_fluxes(const NavierStokes& eq, const double u[4],
                          const double grad[8], double fa[4][2],
                          double fv[4][2]) {
  if (!eq.flux_adv(u, fa))
    throw StateError("non-physical state in Navier-Stokes flux evaluation");
  double heat[2];
  if (!eq.flux_visc(u, grad, fv, heat))
    throw StateError("non-physical state in Navier-Stokes viscous flux");
}

} // namespace lwfr
