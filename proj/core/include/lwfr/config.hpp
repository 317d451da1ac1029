#pragma once

#include <array>
#include <string>
#include <string_view>

#include "lwfr/boundary.hpp"
#include "lwfr/equations.hpp"
#include "lwfr/mesh.hpp"

namespace lwfr {

enum class SystemKind { advdiff, navier_stokes };
enum class InitialKind { exact, constant };
enum class TimeMode { adaptive, fixed_cfl };
enum class MeshKind { cartesian, warped };

/// Fully validated run description, parsed from the line-based
/// `key = value` grammar with [equation]/[mesh]/[time]/[boundary]/[output]
/// sections.
struct RunConfig {
  // [equation]
  SystemKind system = SystemKind::advdiff;
  AdvDiffParams advdiff;
  NavierStokesParams ns;
  bool manufactured_source = false;
  double mms_c = 2.0, mms_A = 0.1;
  InitialKind initial = InitialKind::exact;
  std::array<double, 4> initial_state{1.0, 0.0, 0.0, 1.0}; // primitive for NS

  // [mesh]
  MeshKind mesh_kind = MeshKind::cartesian;
  int nx = 0, ny = 0;
  int degree = 2;
  Rect domain;
  double warp = 0.05;

  // [time]
  TimeMode mode = TimeMode::adaptive;
  double t_final = 0.0;
  double abs_tol = 1e-8, rel_tol = 1e-8;
  std::array<double, 3> beta{0.6, -0.2, 0.0};
  bool limiter = true;
  double cfl_a = 0.5, cfl_v = 0.6; // safe for every supported degree
  long max_steps = 0; // 0: unlimited
  double dt_max = 0.0; // 0: unlimited

  // [boundary]
  BoundaryTable bc;

  // [output]
  std::string out_dir = "out";
  int dump_interval = 0;
  bool log_steps = false;

  bool periodic_x() const {
    return bc.side[0].kind == BoundaryKind::periodic;
  }
  bool periodic_y() const {
    return bc.side[2].kind == BoundaryKind::periodic;
  }
};

/// Parse and validate; throws ConfigError carrying every problem found,
/// one `line N: ...` message per line.
RunConfig parse_config(std::string_view text);

/// Convenience: read the file then parse.
RunConfig parse_config_file(const std::string& path);

} // namespace lwfr
