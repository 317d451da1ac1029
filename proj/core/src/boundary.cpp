#include "lwfr/boundary.hpp"

namespace lwfr {

const char* to_string(BoundaryKind k) {
  switch (k) {
  case BoundaryKind::periodic: return "periodic";
  case BoundaryKind::dirichlet_exact: return "dirichlet_exact";
  case BoundaryKind::inflow_profile: return "inflow_profile";
  case BoundaryKind::noslip_isothermal: return "noslip_isothermal";
  case BoundaryKind::noslip_adiabatic: return "noslip_adiabatic";
  case BoundaryKind::moving_wall_isothermal: return "moving_wall_isothermal";
  }
  return "?";
}

bool boundary_kind_from_string(const std::string& s, BoundaryKind& out) {
  if (s == "periodic") out = BoundaryKind::periodic;
  else if (s == "dirichlet_exact") out = BoundaryKind::dirichlet_exact;
  else if (s == "inflow_profile") out = BoundaryKind::inflow_profile;
  else if (s == "noslip_isothermal") out = BoundaryKind::noslip_isothermal;
  else if (s == "noslip_adiabatic") out = BoundaryKind::noslip_adiabatic;
  else if (s == "moving_wall_isothermal") out = BoundaryKind::moving_wall_isothermal;
  else return false;
  return true;
}

} // namespace lwfr
