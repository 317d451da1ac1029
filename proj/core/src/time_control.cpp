#include "lwfr/time_control.hpp"

namespace lwfr {

StepProposal propose_step(ControllerState& ctrl, double e) {
  StepProposal out;
  if (!std::isfinite(e)) {
    out.accept = false;
    out.dt_next = std::min(0.5 * ctrl.dt, ctrl.dt_max);
    ctrl.rejected++;
    ctrl.consecutive_rejects++;
    ctrl.dt = out.dt_next;
    return out;
  }
  const double ef = std::max(e, 1e-12);
  const double k = static_cast<double>(ctrl.order_khat);
  double factor = std::pow(1.0 / ef, ctrl.beta1 / k);
  if (ctrl.beta2 != 0.0) factor *= std::pow(1.0 / ctrl.err_n, ctrl.beta2 / k);
  if (ctrl.beta3 != 0.0) factor *= std::pow(1.0 / ctrl.err_nm1, ctrl.beta3 / k);
  if (ctrl.limiter) factor = 1.0 + std::atan(factor - 1.0);
  out.accept = e <= 1.0;
  // a rejected step must shrink decisively: the bare controller factor tends
  // to 1 from below as e -> 1+, which would stall the rejection loop
  if (!out.accept) factor = std::min(factor, 0.9);
  out.dt_next = std::min(ctrl.dt * factor, ctrl.dt_max);
  if (out.accept) {
    ctrl.err_nm1 = ctrl.err_n;
    ctrl.err_n = ef;
    ctrl.accepted++;
    ctrl.consecutive_rejects = 0;
  } else {
    ctrl.rejected++;
    ctrl.consecutive_rejects++;
  }
  ctrl.dt = out.dt_next;
  return out;
}

double embedded_error_estimate(const NodalField& u_high,
                               const NodalField& u_low,
                               const NodalField& u_prev,
                               const GeometryField& geom, const Basis1D& basis,
                               double abs_tol, double rel_tol) {
  const int np = basis.npts();
  double num = 0.0, den = 0.0;
  for (int e = 0; e < u_high.ne; ++e)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const int node = j * np + i;
        const double wj = basis.weight(i) * basis.weight(j) * geom.J(e, node);
        const double* hi = u_high.at(e, node);
        const double* lo = u_low.at(e, node);
        const double* pr = u_prev.at(e, node);
        for (int c = 0; c < u_high.ncomp; ++c) {
          const double s =
              abs_tol + rel_tol * std::max(std::abs(pr[c]), std::abs(hi[c]));
          const double d = (hi[c] - lo[c]) / s;
          num += wj * d * d;
        }
        den += wj;
      }
  return std::sqrt(num / (den * u_high.ncomp));
}

} // namespace lwfr
