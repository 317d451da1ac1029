#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lwfr/errors.hpp"

namespace lwfr {

struct AdvDiffParams {
  double ax = 1.0, ay = 1.0; // advection velocity
  double nu = 0.0;           // diffusion coefficient, >= 0
};

/// Scalar linear advection-diffusion u_t + a.grad(u) = nu Lap(u), with the
/// periodic exact solution u = 1 + 0.5 exp(-2 nu pi^2 t) sin(pi(x-a1 t+y-a2 t)).
class AdvDiff {
public:
  static constexpr int ncomp = 1;
  static constexpr bool has_heat_flux = false;
  static constexpr bool needs_physical_state = false;
  static constexpr bool state_dependent_cfl = false;
  /// both fluxes are linear and homogeneous in (u, grad u), so flux time
  /// derivatives are fluxes of the time derivatives
  static constexpr bool linear_flux = true;

  explicit AdvDiff(AdvDiffParams p) : p_(p) {
    if (p.nu < 0.0) throw ConfigError("diffusion coefficient nu must be >= 0");
  }
  const AdvDiffParams& params() const { return p_; }

  bool flux_adv(const double* u, double f[ncomp][2]) const {
    f[0][0] = p_.ax * u[0];
    f[0][1] = p_.ay * u[0];
    return true;
  }
  bool flux_visc(const double* /*u*/, const double* grad, double f[ncomp][2],
                 double* /*heat*/) const {
    f[0][0] = p_.nu * grad[0];
    f[0][1] = p_.nu * grad[1];
    return true;
  }
  double wave_speed(const double* /*uL*/, const double* /*uR*/, double nx,
                    double ny) const {
    return std::abs(p_.ax * nx + p_.ay * ny);
  }
  /// max wave speed over the two coordinate directions (CFL proxy)
  double max_wave_speed(const double* /*u*/) const {
    return std::max(std::abs(p_.ax), std::abs(p_.ay));
  }
  double diffusion_scale(const double* /*u*/) const { return p_.nu; }

  bool has_exact() const { return true; }
  void exact(double x, double y, double t, double* u) const {
    const double pi = M_PI;
    u[0] = 1.0 + 0.5 * std::exp(-2.0 * p_.nu * pi * pi * t) *
                     std::sin(pi * (x - p_.ax * t + y - p_.ay * t));
  }
  bool has_source() const { return false; }
  void source(double, double, double, double*) const {}

  static std::vector<std::string> comp_names() { return {"u"}; }

private:
  AdvDiffParams p_;
};

struct NavierStokesParams {
  double gamma = 1.4;   // ratio of specific heats, > 1
  double mu = 0.0;      // dynamic viscosity, >= 0
  double prandtl = 0.72; // Prandtl number, > 0
};

class ManufacturedNS; // defined in manufactured.hpp

/// 2-D compressible Navier-Stokes in conservative variables
/// (rho, rho v1, rho v2, E). Normalization: T = p/rho, heat conductivity
/// kappa = mu gamma / (Pr (gamma-1)); stress tensor includes the Stokes
/// -(2/3)(div v) I bulk term.
class NavierStokes {
public:
  static constexpr int ncomp = 4;
  static constexpr bool has_heat_flux = true;
  static constexpr bool needs_physical_state = true;
  static constexpr bool state_dependent_cfl = true;
  static constexpr bool linear_flux = false;

  explicit NavierStokes(NavierStokesParams p) : p_(p) {
    if (!(p.gamma > 1.0)) throw ConfigError("gamma must be > 1");
    if (p.mu < 0.0) throw ConfigError("viscosity mu must be >= 0");
    if (!(p.prandtl > 0.0)) throw ConfigError("Prandtl number must be > 0");
  }
  const NavierStokesParams& params() const { return p_; }

  /// conservative -> primitive (rho, v1, v2, p); false on rho<=0 or p<=0
  bool primitive(const double* u, double* prim) const {
    const double rho = u[0];
    if (!(rho > 0.0)) return false;
    const double v1 = u[1] / rho, v2 = u[2] / rho;
    const double p = (p_.gamma - 1.0) * (u[3] - 0.5 * rho * (v1 * v1 + v2 * v2));
    if (!(p > 0.0)) return false;
    prim[0] = rho;
    prim[1] = v1;
    prim[2] = v2;
    prim[3] = p;
    return true;
  }
  void conservative(const double* prim, double* u) const {
    u[0] = prim[0];
    u[1] = prim[0] * prim[1];
    u[2] = prim[0] * prim[2];
    u[3] = prim[3] / (p_.gamma - 1.0) +
           0.5 * prim[0] * (prim[1] * prim[1] + prim[2] * prim[2]);
  }

  bool flux_adv(const double* u, double f[ncomp][2]) const {
    double prim[4];
    if (!primitive(u, prim)) return false;
    const double v1 = prim[1], v2 = prim[2], p = prim[3];
    const double Ep = u[3] + p;
    f[0][0] = u[1];
    f[1][0] = u[1] * v1 + p;
    f[2][0] = u[2] * v1;
    f[3][0] = Ep * v1;
    f[0][1] = u[2];
    f[1][1] = u[1] * v2;
    f[2][1] = u[2] * v2 + p;
    f[3][1] = Ep * v2;
    return true;
  }

  /// Viscous flux from conservative state and conservative-variable gradient
  /// grad[c*2+d]. Also returns the heat-flux vector kappa grad(T) separately
  /// (needed by adiabatic wall traces).
  bool flux_visc(const double* u, const double* grad, double f[ncomp][2],
                 double heat[2]) const {
    const double rho = u[0];
    if (!(rho > 0.0)) return false;
    const double v1 = u[1] / rho, v2 = u[2] / rho;
    // velocity gradients by chain rule from conservative gradients
    const double rx = grad[0], ry = grad[1];
    const double v1x = (grad[2] - v1 * rx) / rho, v1y = (grad[3] - v1 * ry) / rho;
    const double v2x = (grad[4] - v2 * rx) / rho, v2y = (grad[5] - v2 * ry) / rho;
    // T = p/rho = (gamma-1)(E/rho - |v|^2/2)
    const double gm1 = p_.gamma - 1.0;
    const double Ex = grad[6], Ey = grad[7];
    const double Tx = gm1 * ((Ex * rho - u[3] * rx) / (rho * rho) - (v1 * v1x + v2 * v2x));
    const double Ty = gm1 * ((Ey * rho - u[3] * ry) / (rho * rho) - (v1 * v1y + v2 * v2y));
    const double divv = v1x + v2y;
    const double mu = p_.mu;
    const double t11 = mu * (2.0 * v1x - (2.0 / 3.0) * divv);
    const double t22 = mu * (2.0 * v2y - (2.0 / 3.0) * divv);
    const double t12 = mu * (v1y + v2x);
    const double kappa = mu * p_.gamma / (p_.prandtl * gm1);
    heat[0] = kappa * Tx;
    heat[1] = kappa * Ty;
    f[0][0] = 0.0;
    f[1][0] = t11;
    f[2][0] = t12;
    f[3][0] = t11 * v1 + t12 * v2 + heat[0];
    f[0][1] = 0.0;
    f[1][1] = t12;
    f[2][1] = t22;
    f[3][1] = t12 * v1 + t22 * v2 + heat[1];
    return true;
  }

  double sound_speed(const double* prim) const {
    return std::sqrt(p_.gamma * prim[3] / prim[0]);
  }

  double wave_speed(const double* uL, const double* uR, double nx,
                    double ny) const {
    double pl[4], pr[4];
    if (!primitive(uL, pl) || !primitive(uR, pr))
      throw StateError("non-physical state in wave speed evaluation");
    const double sl = std::abs(pl[1] * nx + pl[2] * ny) + sound_speed(pl);
    const double sr = std::abs(pr[1] * nx + pr[2] * ny) + sound_speed(pr);
    return std::max(sl, sr);
  }
  double max_wave_speed(const double* u) const {
    double prim[4];
    if (!primitive(u, prim))
      throw StateError("non-physical state in wave speed evaluation");
    return std::max(std::abs(prim[1]), std::abs(prim[2])) + sound_speed(prim);
  }
  double diffusion_scale(const double* u) const {
    const double rho = u[0] > 0.0 ? u[0] : 1.0;
    return p_.mu / rho * std::max(4.0 / 3.0, p_.gamma / p_.prandtl);
  }

  /// Wall ghost state: velocity mirrored about the wall velocity; the
  /// temperature is mirrored about the wall temperature (isothermal) or
  /// copied (adiabatic). Involutive for all wall kinds.
  void mirror_wall_state(const double* inner, const double* vwall,
                         bool isothermal, double Twall, double* outer) const {
    const double rho = inner[0];
    const double v1 = inner[1] / rho, v2 = inner[2] / rho;
    const double w1 = 2.0 * vwall[0] - v1, w2 = 2.0 * vwall[1] - v2;
    const double gm1 = p_.gamma - 1.0;
    const double p_in = gm1 * (inner[3] - 0.5 * rho * (v1 * v1 + v2 * v2));
    const double T_in = p_in / rho;
    const double T_out = isothermal ? (2.0 * Twall - T_in) : T_in;
    const double p_out = rho * T_out;
    outer[0] = rho;
    outer[1] = rho * w1;
    outer[2] = rho * w2;
    outer[3] = p_out / gm1 + 0.5 * rho * (w1 * w1 + w2 * w2);
  }

  // exact solution / source hooks (constant free stream or manufactured)
  enum class ExactKind { none, constant, manufactured };
  void set_constant_exact(const std::array<double, 4>& conservative_state) {
    exact_kind_ = ExactKind::constant;
    const_state_ = conservative_state;
  }
  void set_manufactured(double c, double A);

  bool has_exact() const { return exact_kind_ != ExactKind::none; }
  void exact(double x, double y, double t, double* u) const;
  bool has_source() const { return exact_kind_ == ExactKind::manufactured; }
  void source(double x, double y, double t, double* s) const;
  /// manufactured constants (c, A); only meaningful in manufactured mode
  std::array<double, 2> manufactured_constants() const { return {mms_c_, mms_A_}; }

  static std::vector<std::string> comp_names() {
    return {"rho", "mx", "my", "E"};
  }

private:
  NavierStokesParams p_;
  ExactKind exact_kind_ = ExactKind::none;
  std::array<double, 4> const_state_{};
  double mms_c_ = 2.0, mms_A_ = 0.1;
};

/// Checked wrapper: advective and viscous adv-diff fluxes.
void advdiff_fluxes(const AdvDiff& eq, double u, const double grad[2],
                    double fa[2], double fv[2]);

/// Checked wrapper: Navier-Stokes fluxes; throws StateError on
/// non-physical input.
void navier_stokes_fluxes(const NavierStokes& eq, const double u[4],
                          const double grad[8], double fa[4][2],
                          double fv[4][2]);

} // namespace lwfr
