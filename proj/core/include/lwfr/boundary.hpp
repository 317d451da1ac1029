#pragma once

#include <array>
#include <string>

#include "lwfr/equations.hpp"

namespace lwfr {

enum class BoundaryKind {
  periodic,
  dirichlet_exact,
  inflow_profile,
  noslip_isothermal,
  noslip_adiabatic,
  moving_wall_isothermal,
};

const char* to_string(BoundaryKind k);
bool boundary_kind_from_string(const std::string& s, BoundaryKind& out);

/// Per-side boundary prescription. Wall kinds carry the wall velocity and
/// (isothermal) wall temperature; inflow carries a constant primitive state.
struct BoundaryTag {
  BoundaryKind kind = BoundaryKind::periodic;
  std::array<double, 2> wall_velocity{0.0, 0.0};
  double wall_temperature = 1.0;
  std::array<double, 4> inflow_primitive{1.0, 0.0, 0.0, 1.0};
};

/// Tags for the four rectangle sides, indexed by Side.
struct BoundaryTable {
  std::array<BoundaryTag, 4> side{};
  const BoundaryTag& at(int side_index) const { return side[side_index]; }
};

namespace detail {

template <class Eq>
void prescribed_state(const Eq& eq, const BoundaryTag& tag, double x, double y,
                      double t, double* g) {
  if (tag.kind == BoundaryKind::dirichlet_exact) {
    eq.exact(x, y, t, g);
  } else { // inflow_profile: constant primitive prescription
    if constexpr (std::is_same_v<Eq, NavierStokes>) {
      eq.conservative(tag.inflow_primitive.data(), g);
    } else {
      g[0] = tag.inflow_primitive[0];
    }
  }
}

template <class Eq>
void wall_mirror(const Eq& eq, const BoundaryTag& tag, const double* inner,
                 double* outer) {
  if constexpr (std::is_same_v<Eq, NavierStokes>) {
    const bool iso = tag.kind != BoundaryKind::noslip_adiabatic;
    eq.mirror_wall_state(inner, tag.wall_velocity.data(), iso,
                         tag.wall_temperature, outer);
  } else {
    (void)eq;
    (void)tag;
    (void)inner;
    (void)outer;
    throw ConfigError("wall boundary conditions require the Navier-Stokes system");
  }
}

} // namespace detail

/// Outer solution trace for the q solve, chosen so the central average u*
/// matches the prescription: dirichlet/inflow mirror about the prescribed
/// state, walls mirror velocity (and temperature, when isothermal) about the
/// wall values.
template <class Eq>
void boundary_solution_trace(const Eq& eq, const BoundaryTag& tag,
                             const double* inner, double x, double y, double t,
                             double* outer) {
  constexpr int nc = Eq::ncomp;
  switch (tag.kind) {
  case BoundaryKind::dirichlet_exact:
  case BoundaryKind::inflow_profile: {
    double g[nc];
    detail::prescribed_state(eq, tag, x, y, t, g);
    for (int c = 0; c < nc; ++c) outer[c] = 2.0 * g[c] - inner[c];
    break;
  }
  case BoundaryKind::noslip_isothermal:
  case BoundaryKind::noslip_adiabatic:
  case BoundaryKind::moving_wall_isothermal:
    detail::wall_mirror(eq, tag, inner, outer);
    break;
  case BoundaryKind::periodic:
    throw ConfigError("periodic faces are structural and carry no boundary data");
  }
}

/// Outer traces of the time-averaged normal fluxes and solution for the
/// interface flux assembly. All normal components use the +e_dir contravariant
/// convention; `met` holds (Ja1x, Ja1y, Ja2x, Ja2y) at the face point.
/// Prescribed states are time-averaged over [t, t+dt] by 3-point Gauss
/// quadrature; walls mirror the time-averaged inner trace. The viscous trace
/// copies the inner value, with the heat-flux part of the energy row removed
/// twice for adiabatic walls so the central flux carries no wall heat flux.
template <class Eq>
void boundary_flux_traces(const Eq& eq, const BoundaryTag& tag,
                          const double* fa_in, const double* fv_in,
                          const double* u_in, double heat_n, double x, double y,
                          double t, double dt, const double* met, int dir,
                          double* fa_out, double* fv_out, double* u_out) {
  constexpr int nc = Eq::ncomp;
  (void)fa_in;
  auto contra_adv = [&](const double* state, double* fn) {
    double f[nc][2];
    if (!eq.flux_adv(state, f))
      throw StateError("non-physical boundary state in flux trace");
    for (int c = 0; c < nc; ++c)
      fn[c] = met[2 * dir + 0] * f[c][0] + met[2 * dir + 1] * f[c][1];
  };
  switch (tag.kind) {
  case BoundaryKind::dirichlet_exact:
  case BoundaryKind::inflow_profile: {
    // 3-point Gauss-Legendre average over the step
    static const double qp[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
    static const double qw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (int c = 0; c < nc; ++c) {
      u_out[c] = 0.0;
      fa_out[c] = 0.0;
    }
    for (int q = 0; q < 3; ++q) {
      double g[nc], fn[nc];
      detail::prescribed_state(eq, tag, x, y, t + qp[q] * dt, g);
      contra_adv(g, fn);
      for (int c = 0; c < nc; ++c) {
        u_out[c] += qw[q] * g[c];
        fa_out[c] += qw[q] * fn[c];
      }
    }
    for (int c = 0; c < nc; ++c) fv_out[c] = fv_in[c];
    break;
  }
  case BoundaryKind::noslip_isothermal:
  case BoundaryKind::noslip_adiabatic:
  case BoundaryKind::moving_wall_isothermal: {
    detail::wall_mirror(eq, tag, u_in, u_out);
    contra_adv(u_out, fa_out);
    for (int c = 0; c < nc; ++c) fv_out[c] = fv_in[c];
    if (tag.kind == BoundaryKind::noslip_adiabatic)
      fv_out[nc - 1] = fv_in[nc - 1] - 2.0 * heat_n;
    break;
  }
  case BoundaryKind::periodic:
    throw ConfigError("periodic faces are structural and carry no boundary data");
  }
}

} // namespace lwfr
