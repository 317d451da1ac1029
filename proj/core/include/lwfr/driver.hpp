#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lwfr/config.hpp"
#include "lwfr/field.hpp"
#include "lwfr/geometry.hpp"
#include "lwfr/mesh.hpp"

namespace lwfr {

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  double final_time = 0.0;
  std::vector<double> integral_initial; // per component, sum w J u
  std::vector<double> integral_final;
  bool every_accepted_e_le_one = true;
  double first_momentum_rate = 0.0; // weighted RMS d(rho v)/dt, first step
  double last_momentum_rate = 0.0;  // same at the last accepted step
};

struct SimResult {
  Basis1D basis;
  CurvilinearMesh mesh;
  GeometryField geom;
  NodalField state;
  StepStats stats;
};

struct RunOptions {
  int threads = 1;
  std::string out_dir;          // overrides cfg when non-empty
  bool force_log_steps = false; // --log-steps
  bool suppress_output = false; // no dumps/logs (used by studies and tests)
};

/// Advance the configured problem from t=0 to t_final (final step clipped so
/// the reported time is exactly t_final). Emits per-step log lines and field
/// dumps per the output controls. Throws StateError with the last valid time
/// on unrecoverable solver failures.
SimResult run_simulation(const RunConfig& cfg, const RunOptions& opt = {});

/// Domain-measure-normalized L2 error per component:
/// sqrt( sum w J |u - u_ex|^2 / sum w J ). `exact(x, y, out)` fills a state.
std::vector<double>
compute_error_norm(const NodalField& u, const CurvilinearMesh& mesh,
                   const GeometryField& geom, const Basis1D& basis,
                   const std::function<void(double, double, double*)>& exact);

/// L2 error of the final state of a run against the configured equation's
/// exact solution at the final time.
std::vector<double> error_vs_exact(const RunConfig& cfg, const SimResult& sim);

struct ConvergenceRow {
  int degree = 0;
  int nx = 0;
  double l2_error = 0.0;
  double eoc = 0.0;
  bool has_eoc = false;
  bool failed = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Run the (degree, resolution) matrix of the base config and collect errors
/// and experimental orders of convergence. A failed run marks its row and the
/// study continues.
ConvergenceReport convergence_study(const RunConfig& base,
                                    const std::vector<int>& resolutions,
                                    const std::vector<int>& degrees,
                                    const RunOptions& opt = {});

/// CSV with header `degree,nx,l2_error,eoc`; the eoc column is empty where
/// undefined and rows of failed runs carry nan.
void write_eoc_csv(std::ostream& os, const ConvergenceReport& report);

/// Discrete integrals sum w J u_c of each component.
std::vector<double> conserved_integrals(const NodalField& u,
                                        const GeometryField& geom,
                                        const Basis1D& basis);

} // namespace lwfr
