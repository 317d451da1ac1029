#include "lwfr/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lwfr/errors.hpp"
#include "lwfr/solver.hpp"
#include "lwfr/time_control.hpp"

namespace lwfr {

namespace {

CurvilinearMesh build_mesh_from(const RunConfig& cfg, const Basis1D& basis) {
  if (cfg.mesh_kind == MeshKind::warped)
    return make_warped_mesh(cfg.nx, cfg.ny, cfg.warp, cfg.domain, basis,
                            cfg.periodic_x(), cfg.periodic_y());
  return make_cartesian_mesh(cfg.nx, cfg.ny, cfg.domain, basis,
                             cfg.periodic_x(), cfg.periodic_y());
}

template <class Eq>
NodalField initial_field(const RunConfig& cfg, const Eq& eq,
                         const CurvilinearMesh& mesh) {
  NodalField u(mesh.n_elements(), mesh.nodes_per_elem(), Eq::ncomp);
  if (cfg.initial == InitialKind::exact) {
    for (int e = 0; e < u.ne; ++e)
      for (int n = 0; n < u.nn; ++n)
        eq.exact(mesh.x(e, n), mesh.y(e, n), 0.0, u.at(e, n));
  } else {
    double state[Eq::ncomp];
    if constexpr (std::is_same_v<Eq, NavierStokes>) {
      eq.conservative(cfg.initial_state.data(), state);
    } else {
      state[0] = cfg.initial_state[0];
    }
    for (int e = 0; e < u.ne; ++e)
      for (int n = 0; n < u.nn; ++n)
        for (int c = 0; c < Eq::ncomp; ++c) u.at(e, n)[c] = state[c];
  }
  return u;
}

double weighted_rms_rate(const NodalField& a, const NodalField& b, double dt,
                         const GeometryField& geom, const Basis1D& basis,
                         int c0, int c1) {
  const int np = basis.npts();
  double num = 0.0, den = 0.0;
  for (int e = 0; e < a.ne; ++e)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const int node = j * np + i;
        const double wj = basis.weight(i) * basis.weight(j) * geom.J(e, node);
        for (int c = c0; c < c1; ++c) {
          const double d = a.at(e, node)[c] - b.at(e, node)[c];
          num += wj * d * d;
        }
        den += wj;
      }
  return std::sqrt(num / den) / dt;
}

struct OutputSink {
  std::filesystem::path dir;
  bool enabled = false;
  bool log_steps = false;
  std::ofstream steps;
  int dump_count = 0;

  void open(const std::string& path, bool want_log) {
    if (path.empty()) return;
    dir = path;
    std::filesystem::create_directories(dir);
    enabled = true;
    log_steps = want_log;
    if (log_steps) steps.open(dir / "steps.log");
  }
  void log(long n, double t, double dt, double e, bool accepted) {
    if (!log_steps) return;
    char buf[160];
    std::snprintf(buf, sizeof buf, "step %ld %.16e %.16e %.16e %d\n", n, t, dt,
                  e, accepted ? 1 : 0);
    steps << buf;
  }
  template <class Names>
  void dump(const CurvilinearMesh& mesh, const NodalField& u, Names names) {
    if (!enabled) return;
    std::ofstream f(dir / ("field_" + std::to_string(dump_count++) + ".txt"));
    write_field_dump(f, mesh, u, names);
  }
};

template <class Eq>
SimResult run_typed(const RunConfig& cfg, Eq eq, const RunOptions& opt) {
  SimResult sim{Basis1D(cfg.degree), CurvilinearMesh{}, GeometryField{},
                NodalField{}, StepStats{}};
  sim.mesh = build_mesh_from(cfg, sim.basis);
  sim.geom = compute_metrics(sim.mesh, sim.basis);
  NodalField u = initial_field(cfg, eq, sim.mesh);

  SolverOptions sopt;
  sopt.threads = opt.threads;
  sopt.embedded = cfg.mode == TimeMode::adaptive;
  Solver<Eq> solver(sim.mesh, sim.geom, sim.basis, eq, cfg.bc, sopt);

  OutputSink out;
  if (!opt.suppress_output)
    out.open(opt.out_dir.empty() ? cfg.out_dir : opt.out_dir,
             cfg.log_steps || opt.force_log_steps);

  sim.stats.integral_initial = conserved_integrals(u, sim.geom, sim.basis);

  NodalField hi(u.ne, u.nn, u.ncomp), lo(u.ne, u.nn, u.ncomp);
  double t = 0.0;
  long attempts = 0;
  const bool momentum_diag = Eq::ncomp == 4;
  if (cfg.dump_interval > 0) out.dump(sim.mesh, u, Eq::comp_names());

  auto on_accept = [&](double dt_used, bool clipped) {
    // the final clipped step can be arbitrarily short; sampling d(rho v)/dt
    // there measures step noise divided by a tiny dt, not the flow
    if (momentum_diag && (!clipped || sim.stats.accepted == 0)) {
      const double rate =
          weighted_rms_rate(hi, u, dt_used, sim.geom, sim.basis, 1, 3);
      if (sim.stats.accepted == 0) sim.stats.first_momentum_rate = rate;
      sim.stats.last_momentum_rate = rate;
    }
    std::swap(u.v, hi.v);
    t = clipped ? cfg.t_final : t + dt_used;
    sim.stats.accepted++;
    if (cfg.dump_interval > 0 && sim.stats.accepted % cfg.dump_interval == 0)
      out.dump(sim.mesh, u, Eq::comp_names());
  };
  auto done = [&] {
    return t >= cfg.t_final ||
           (cfg.max_steps > 0 && sim.stats.accepted >= cfg.max_steps);
  };

  if (cfg.mode == TimeMode::fixed_cfl) {
    double dt_cfl = fixed_cfl_step(u, sim.geom, eq, cfg.degree, cfg.cfl_a,
                                   cfg.cfl_v);
    while (!done()) {
      if (Eq::state_dependent_cfl)
        dt_cfl = fixed_cfl_step(u, sim.geom, eq, cfg.degree, cfg.cfl_a,
                                cfg.cfl_v);
      if (!std::isfinite(dt_cfl) || dt_cfl <= 0.0)
        throw StateError("CFL step size is not positive at t=" + std::to_string(t));
      const bool clipped = t + dt_cfl >= cfg.t_final;
      const double dt = clipped ? cfg.t_final - t : dt_cfl;
      try {
        solver.take_step(u, t, dt, hi, nullptr);
      } catch (const StateError& err) {
        throw StateError(std::string(err.what()) + "; last valid time t=" +
                             std::to_string(t),
                         err.element, err.node);
      }
      ++attempts;
      out.log(attempts, t + dt, dt, 0.0, true);
      on_accept(dt, clipped);
    }
  } else {
    ControllerState ctrl;
    ctrl.abs_tol = cfg.abs_tol;
    ctrl.rel_tol = cfg.rel_tol;
    ctrl.beta1 = cfg.beta[0];
    ctrl.beta2 = cfg.beta[1];
    ctrl.beta3 = cfg.beta[2];
    ctrl.limiter = cfg.limiter;
    ctrl.order_khat = cfg.degree + 1;
    if (cfg.dt_max > 0.0) ctrl.dt_max = cfg.dt_max;
    const double dt0 =
        0.5 * fixed_cfl_step(u, sim.geom, eq, cfg.degree, cfg.cfl_a, cfg.cfl_v);
    if (!std::isfinite(dt0) || dt0 <= 0.0)
      throw StateError("initial step size is not positive");
    ctrl.dt = std::min(dt0, ctrl.dt_max);
    while (!done()) {
      const bool clipped = t + ctrl.dt >= cfg.t_final;
      const double dt = clipped ? cfg.t_final - t : ctrl.dt;
      double e;
      bool failed = false;
      try {
        solver.take_step(u, t, dt, hi, &lo);
        e = embedded_error_estimate(hi, lo, u, sim.geom, sim.basis,
                                    cfg.abs_tol, cfg.rel_tol);
      } catch (const StateError&) {
        // non-physical intermediate state: reject and retry smaller
        e = std::numeric_limits<double>::quiet_NaN();
        failed = true;
      }
      ctrl.dt = dt; // propose relative to the attempted step
      const StepProposal prop = propose_step(ctrl, e);
      ++attempts;
      out.log(attempts, prop.accept ? (clipped ? cfg.t_final : t + dt) : t, dt,
              failed ? -1.0 : e, prop.accept);
      if (prop.accept) {
        if (!(e <= 1.0)) sim.stats.every_accepted_e_le_one = false;
        on_accept(dt, clipped);
      } else if (ctrl.consecutive_rejects >= 10) {
        throw StateError("10 consecutive step rejections; last valid time t=" +
                         std::to_string(t));
      }
    }
    sim.stats.rejected = ctrl.rejected;
  }

  sim.stats.final_time = t;
  sim.stats.integral_final = conserved_integrals(u, sim.geom, sim.basis);
  if (!opt.suppress_output &&
      (cfg.dump_interval == 0 ||
       sim.stats.accepted % std::max(cfg.dump_interval, 1) != 0))
    out.dump(sim.mesh, u, Eq::comp_names());
  sim.state = std::move(u);
  return sim;
}

} // namespace

SimResult run_simulation(const RunConfig& cfg, const RunOptions& opt) {
  if (cfg.system == SystemKind::advdiff) {
    return run_typed(cfg, AdvDiff(cfg.advdiff), opt);
  }
  NavierStokes eq(cfg.ns);
  if (cfg.manufactured_source) {
    eq.set_manufactured(cfg.mms_c, cfg.mms_A);
  } else if (cfg.initial == InitialKind::constant) {
    double state[4];
    eq.conservative(cfg.initial_state.data(), state);
    eq.set_constant_exact({state[0], state[1], state[2], state[3]});
  }
  return run_typed(cfg, eq, opt);
}

std::vector<double>
compute_error_norm(const NodalField& u, const CurvilinearMesh& mesh,
                   const GeometryField& geom, const Basis1D& basis,
                   const std::function<void(double, double, double*)>& exact) {
  const int np = basis.npts();
  std::vector<double> num(u.ncomp, 0.0);
  double den = 0.0;
  std::vector<double> ue(u.ncomp);
  for (int e = 0; e < u.ne; ++e)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const int node = j * np + i;
        const double wj = basis.weight(i) * basis.weight(j) * geom.J(e, node);
        exact(mesh.x(e, node), mesh.y(e, node), ue.data());
        const double* uv = u.at(e, node);
        for (int c = 0; c < u.ncomp; ++c) {
          const double d = uv[c] - ue[c];
          num[c] += wj * d * d;
        }
        den += wj;
      }
  for (auto& v : num) v = std::sqrt(v / den);
  return num;
}

std::vector<double> error_vs_exact(const RunConfig& cfg, const SimResult& sim) {
  const double t = sim.stats.final_time;
  if (cfg.system == SystemKind::advdiff) {
    AdvDiff eq(cfg.advdiff);
    return compute_error_norm(sim.state, sim.mesh, sim.geom, sim.basis,
                              [&](double x, double y, double* out) {
                                eq.exact(x, y, t, out);
                              });
  }
  NavierStokes eq(cfg.ns);
  if (cfg.manufactured_source)
    eq.set_manufactured(cfg.mms_c, cfg.mms_A);
  else if (cfg.initial == InitialKind::constant) {
    double state[4];
    eq.conservative(cfg.initial_state.data(), state);
    eq.set_constant_exact({state[0], state[1], state[2], state[3]});
  } else {
    throw ConfigError("no exact solution available for error computation");
  }
  return compute_error_norm(sim.state, sim.mesh, sim.geom, sim.basis,
                            [&](double x, double y, double* out) {
                              eq.exact(x, y, t, out);
                            });
}

ConvergenceReport convergence_study(const RunConfig& base,
                                    const std::vector<int>& resolutions,
                                    const std::vector<int>& degrees,
                                    const RunOptions& opt) {
  ConvergenceReport rep;
  RunOptions ropt = opt;
  ropt.suppress_output = true;
  for (int deg : degrees) {
    double prev_err = 0.0;
    int prev_nx = 0;
    bool have_prev = false;
    for (int nx : resolutions) {
      RunConfig cfg = base;
      cfg.degree = deg;
      cfg.nx = nx;
      cfg.ny = nx;
      ConvergenceRow row;
      row.degree = deg;
      row.nx = nx;
      try {
        const SimResult sim = run_simulation(cfg, ropt);
        row.l2_error = error_vs_exact(cfg, sim)[0];
        if (have_prev && row.l2_error > 0.0 && prev_err > 0.0) {
          row.eoc = std::log(prev_err / row.l2_error) /
                    std::log(static_cast<double>(nx) / prev_nx);
          row.has_eoc = true;
        }
        prev_err = row.l2_error;
        prev_nx = nx;
        have_prev = true;
      } catch (const std::exception&) {
        row.failed = true;
        row.l2_error = std::numeric_limits<double>::quiet_NaN();
        have_prev = false;
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

void write_eoc_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "degree,nx,l2_error,eoc\n";
  char buf[64];
  for (const auto& r : report.rows) {
    os << r.degree << ',' << r.nx << ',';
    std::snprintf(buf, sizeof buf, "%.12e", r.l2_error);
    os << buf << ',';
    if (r.has_eoc) {
      std::snprintf(buf, sizeof buf, "%.6f", r.eoc);
      os << buf;
    }
    os << '\n';
  }
}

std::vector<double> conserved_integrals(const NodalField& u,
                                        const GeometryField& geom,
                                        const Basis1D& basis) {
  const int np = basis.npts();
  std::vector<double> sum(u.ncomp, 0.0);
  for (int e = 0; e < u.ne; ++e)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const int node = j * np + i;
        const double wj = basis.weight(i) * basis.weight(j) * geom.J(e, node);
        for (int c = 0; c < u.ncomp; ++c) sum[c] += wj * u.at(e, node)[c];
      }
  return sum;
}

} // namespace lwfr
