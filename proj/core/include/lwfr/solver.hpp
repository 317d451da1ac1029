#pragma once

#include <cmath>
#include <vector>

#include "lwfr/basis.hpp"
#include "lwfr/boundary.hpp"
#include "lwfr/br1.hpp"
#include "lwfr/field.hpp"
#include "lwfr/geometry.hpp"
#include "lwfr/mesh.hpp"
#include "lwfr/parallel.hpp"

namespace lwfr {

/// Contravariant components (Ja^1 . f, Ja^2 . f) of a physical flux matrix
/// f[c*2+d]; met holds (Ja1x, Ja1y, Ja2x, Ja2y).
inline void transform_to_contravariant(const double* fphys, const double* met,
                                       int nc, double* ftil) {
  for (int c = 0; c < nc; ++c) {
    ftil[c * 2 + 0] = met[0] * fphys[c * 2 + 0] + met[1] * fphys[c * 2 + 1];
    ftil[c * 2 + 1] = met[2] * fphys[c * 2 + 0] + met[3] * fphys[c * 2 + 1];
  }
}

/// Rusanov flux on time-averaged traces with D2 dissipation, in the +e_dir
/// convention: 1/2 (Fn- + Fn+) - lam/2 (U+ - U-). `lam` is the physical wave
/// speed already scaled by the surface element |Ja^dir|.
inline void rusanov_timeavg_flux(const double* FnM, const double* FnP,
                                 const double* UM, const double* UP,
                                 double lam, int nc, double* out) {
  for (int c = 0; c < nc; ++c)
    out[c] = 0.5 * (FnM[c] + FnP[c]) - 0.5 * lam * (UP[c] - UM[c]);
}

/// Central flux for the viscous traces.
inline void central_viscous_flux(const double* FnM, const double* FnP, int nc,
                                 double* out) {
  for (int c = 0; c < nc; ++c) out[c] = 0.5 * (FnM[c] + FnP[c]);
}

namespace detail {

// time-derivative stencil weights for the source ladder (7 samples, spacing
// SRC_DELTA, derivatives 1..4)
constexpr double SRC_DELTA = 0.02;

template <class Eq, int ORDER>
void source_ladder_node(const Eq& eq, double x, double y, double t,
                        double* sk /* (ORDER+1) * NC */) {
  constexpr int NC = Eq::ncomp;
  const double d = SRC_DELTA;
  double smp[7][NC] = {};
  for (int m = -3; m <= 3; ++m) eq.source(x, y, t + m * d, smp[m + 3]);
  for (int c = 0; c < NC; ++c) sk[c] = smp[3][c];
  if constexpr (ORDER >= 1) {
    for (int c = 0; c < NC; ++c)
      sk[NC + c] = (-smp[0][c] + 9 * smp[1][c] - 45 * smp[2][c] +
                    45 * smp[4][c] - 9 * smp[5][c] + smp[6][c]) /
                   (60.0 * d);
  }
  if constexpr (ORDER >= 2) {
    for (int c = 0; c < NC; ++c)
      sk[2 * NC + c] = (2 * smp[0][c] - 27 * smp[1][c] + 270 * smp[2][c] -
                        490 * smp[3][c] + 270 * smp[4][c] - 27 * smp[5][c] +
                        2 * smp[6][c]) /
                       (180.0 * d * d);
  }
  if constexpr (ORDER >= 3) {
    for (int c = 0; c < NC; ++c)
      sk[3 * NC + c] = (smp[0][c] - 8 * smp[1][c] + 13 * smp[2][c] -
                        13 * smp[4][c] + 8 * smp[5][c] - smp[6][c]) /
                       (8.0 * d * d * d);
  }
  if constexpr (ORDER >= 4) {
    for (int c = 0; c < NC; ++c)
      sk[4 * NC + c] = (-smp[0][c] + 12 * smp[1][c] - 39 * smp[2][c] +
                        56 * smp[3][c] - 39 * smp[4][c] + 12 * smp[5][c] -
                        smp[6][c]) /
                       (6.0 * d * d * d * d);
  }
}

/// Approximate Lax-Wendroff expansion for one element: fills the nodal
/// time-averaged contravariant fluxes Fa/Fv, the time-averaged solution U,
/// their k=N top terms (for the embedded pair), the heat-flux time average
/// (adiabatic walls) and the source time average.
template <class Eq, int NP>
void ladder_element(const Eq& eq, int e, double t, double dt, const double* u,
                    const double* q, const double* jac, const double* met,
                    const double* D, const double* xs, const double* ys,
                    bool want_embedded, bool want_heat, bool want_source,
                    double* Fa, double* Fv, double* U, double* FaN,
                    double* FvN, double* UN, double* Ht, double* HtN,
                    double* Sh, double* SN) {
  constexpr int N = NP - 1;
  constexpr int NC = Eq::ncomp;
  constexpr int NN = NP * NP;

  double uk[N][NN * NC];      // time derivatives 1..N of u
  double gk[N][NN * NC * 2];  // matching physical-gradient derivatives
  double fa0[NN * NC * 2], fv0[NN * NC * 2], h0[NN * 2];
  double fac[NN * NC * 2], fvc[NN * NC * 2], hc[NN * 2]; // current d_t^k fluxes
  double sld[N + 1][NN * NC];

  auto eval_pair = [&](const double* state, const double* grad, int node,
                       double* fa_out, double* fv_out, double* h_out) {
    double fp[NC][2], vp[NC][2], heat[2] = {0.0, 0.0};
    if (!eq.flux_adv(state, fp) || !eq.flux_visc(state, grad, vp, heat))
      throw StateError("non-physical state in Lax-Wendroff expansion", e, node);
    const double* m4 = met + node * 4;
    for (int c = 0; c < NC; ++c) {
      fa_out[c * 2 + 0] = m4[0] * fp[c][0] + m4[1] * fp[c][1];
      fa_out[c * 2 + 1] = m4[2] * fp[c][0] + m4[3] * fp[c][1];
      fv_out[c * 2 + 0] = m4[0] * vp[c][0] + m4[1] * vp[c][1];
      fv_out[c * 2 + 1] = m4[2] * vp[c][0] + m4[3] * vp[c][1];
    }
    if (h_out) {
      h_out[0] = m4[0] * heat[0] + m4[1] * heat[1];
      h_out[1] = m4[2] * heat[0] + m4[3] * heat[1];
    }
  };

  // k = 0: instantaneous fluxes at (u, q)
  for (int node = 0; node < NN; ++node)
    eval_pair(u + node * NC, q + node * NC * 2, node, fa0 + node * NC * 2,
              fv0 + node * NC * 2, want_heat ? h0 + node * 2 : nullptr);
  for (int i = 0; i < NN * NC * 2; ++i) {
    Fa[i] = fa0[i];
    Fv[i] = fv0[i];
    fac[i] = fa0[i];
    fvc[i] = fv0[i];
  }
  for (int i = 0; i < NN * NC; ++i) U[i] = u[i];
  if (want_heat)
    for (int i = 0; i < NN * 2; ++i) {
      Ht[i] = h0[i];
      hc[i] = h0[i];
    }
  if (want_source) {
    for (int node = 0; node < NN; ++node) {
      double sk[(N + 1) * NC];
      source_ladder_node<Eq, N>(eq, xs[node], ys[node], t, sk);
      for (int k = 0; k <= N; ++k)
        for (int c = 0; c < NC; ++c)
          sld[k][node * NC + c] = sk[k * NC + c];
    }
    for (int i = 0; i < NN * NC; ++i) Sh[i] = sld[0][i];
  }

  double dtk = 1.0, factk = 1.0;
  for (int k = 1; k <= N; ++k) {
    dtk *= dt;
    factk *= (k + 1);
    const double ck = dtk / factk;
    double* ukk = uk[k - 1];
    double* gkk = gk[k - 1];
    // u^(k) = -(1/J) div_xi(d_t^{k-1} ftilde) + s^(k-1)
    for (int j = 0; j < NP; ++j)
      for (int i = 0; i < NP; ++i) {
        const int node = j * NP + i;
        const double inv_j = 1.0 / jac[node];
        for (int c = 0; c < NC; ++c) {
          double div = 0.0;
          for (int m = 0; m < NP; ++m) {
            const int nx = j * NP + m, ny = m * NP + i;
            div += D[i * NP + m] * (fac[(nx * NC + c) * 2] - fvc[(nx * NC + c) * 2]);
            div += D[j * NP + m] * (fac[(ny * NC + c) * 2 + 1] - fvc[(ny * NC + c) * 2 + 1]);
          }
          double val = -div * inv_j;
          if (want_source) val += sld[k - 1][node * NC + c];
          ukk[node * NC + c] = val;
        }
      }
    // (grad u)^(k) = (1/J) M grad_xi u^(k)
    for (int j = 0; j < NP; ++j)
      for (int i = 0; i < NP; ++i) {
        const int node = j * NP + i;
        const double inv_j = 1.0 / jac[node];
        const double* m4 = met + node * 4;
        for (int c = 0; c < NC; ++c) {
          double dxi = 0.0, deta = 0.0;
          for (int m = 0; m < NP; ++m) {
            dxi += D[i * NP + m] * ukk[(j * NP + m) * NC + c];
            deta += D[j * NP + m] * ukk[(m * NP + i) * NC + c];
          }
          gkk[(node * NC + c) * 2 + 0] = (m4[0] * dxi + m4[2] * deta) * inv_j;
          gkk[(node * NC + c) * 2 + 1] = (m4[1] * dxi + m4[3] * deta) * inv_j;
        }
      }
    for (int i = 0; i < NN * NC; ++i) U[i] += ck * ukk[i];
    if (want_embedded && k == N)
      for (int i = 0; i < NN * NC; ++i) UN[i] = ck * ukk[i];
    if (want_source) {
      for (int i = 0; i < NN * NC; ++i) Sh[i] += ck * sld[k][i];
      if (want_embedded && k == N)
        for (int i = 0; i < NN * NC; ++i) SN[i] = ck * sld[k][i];
    }

    // d_t^k fluxes: fluxes of the ladder values when the flux is linear,
    // symmetric stencils on Taylor states otherwise
    if constexpr (Eq::linear_flux) {
      for (int node = 0; node < NN; ++node)
        eval_pair(ukk + node * NC, gkk + node * NC * 2, node,
                  fac + node * NC * 2, fvc + node * NC * 2,
                  want_heat ? hc + node * 2 : nullptr);
    } else
    for (int node = 0; node < NN; ++node) {
      const double* un = u + node * NC;
      const double* qn = q + node * NC * 2;
      double st[NC], gt[NC * 2];
      double fpa[NC * 2], fpv[NC * 2], fma[NC * 2], fmv[NC * 2];
      double hp[2], hm[2];
      double* hcn = want_heat ? hc + node * 2 : nullptr;
      auto taylor = [&](double m) {
        // state and gradient expanded to order k at time offset m*dt
        for (int c = 0; c < NC; ++c) {
          double s = un[c];
          double g0 = qn[c * 2 + 0], g1 = qn[c * 2 + 1];
          double pw = 1.0, fct = 1.0;
          for (int kk = 1; kk <= k; ++kk) {
            pw *= m * dt;
            fct *= kk;
            const double w = pw / fct;
            s += w * uk[kk - 1][node * NC + c];
            g0 += w * gk[kk - 1][(node * NC + c) * 2 + 0];
            g1 += w * gk[kk - 1][(node * NC + c) * 2 + 1];
          }
          st[c] = s;
          gt[c * 2 + 0] = g0;
          gt[c * 2 + 1] = g1;
        }
      };
      double* fan = fac + node * NC * 2;
      double* fvn = fvc + node * NC * 2;
      // low-derivative stencils widen with N so every term of the series
      // stays within the O(dt^{N+1}) budget of the time average
      if (k == 1 && N >= 3) {
        double f2a[NC * 2], f2v[NC * 2], fm2a[NC * 2], fm2v[NC * 2];
        double hp2[2], hm2[2];
        taylor(+2.0);
        eval_pair(st, gt, node, f2a, f2v, want_heat ? hp2 : nullptr);
        taylor(+1.0);
        eval_pair(st, gt, node, fpa, fpv, want_heat ? hp : nullptr);
        taylor(-1.0);
        eval_pair(st, gt, node, fma, fmv, want_heat ? hm : nullptr);
        taylor(-2.0);
        eval_pair(st, gt, node, fm2a, fm2v, want_heat ? hm2 : nullptr);
        const double r = 1.0 / (12.0 * dt);
        for (int i = 0; i < NC * 2; ++i) {
          fan[i] = (fm2a[i] - 8.0 * fma[i] + 8.0 * fpa[i] - f2a[i]) * r;
          fvn[i] = (fm2v[i] - 8.0 * fmv[i] + 8.0 * fpv[i] - f2v[i]) * r;
        }
        if (want_heat)
          for (int i = 0; i < 2; ++i)
            hcn[i] = (hm2[i] - 8.0 * hm[i] + 8.0 * hp[i] - hp2[i]) * r;
      } else if (k == 2 && N >= 4) {
        double f2a[NC * 2], f2v[NC * 2], fm2a[NC * 2], fm2v[NC * 2];
        double hp2[2], hm2[2];
        taylor(+2.0);
        eval_pair(st, gt, node, f2a, f2v, want_heat ? hp2 : nullptr);
        taylor(+1.0);
        eval_pair(st, gt, node, fpa, fpv, want_heat ? hp : nullptr);
        taylor(-1.0);
        eval_pair(st, gt, node, fma, fmv, want_heat ? hm : nullptr);
        taylor(-2.0);
        eval_pair(st, gt, node, fm2a, fm2v, want_heat ? hm2 : nullptr);
        const double r = 1.0 / (12.0 * dt * dt);
        const double* a0 = fa0 + node * NC * 2;
        const double* v0 = fv0 + node * NC * 2;
        for (int i = 0; i < NC * 2; ++i) {
          fan[i] = (-f2a[i] + 16.0 * fpa[i] - 30.0 * a0[i] + 16.0 * fma[i] - fm2a[i]) * r;
          fvn[i] = (-f2v[i] + 16.0 * fpv[i] - 30.0 * v0[i] + 16.0 * fmv[i] - fm2v[i]) * r;
        }
        if (want_heat) {
          const double* hh0 = h0 + node * 2;
          for (int i = 0; i < 2; ++i)
            hcn[i] = (-hp2[i] + 16.0 * hp[i] - 30.0 * hh0[i] + 16.0 * hm[i] - hm2[i]) * r;
        }
      } else if (k == 1 || k == 2) {
        taylor(+1.0);
        eval_pair(st, gt, node, fpa, fpv, want_heat ? hp : nullptr);
        taylor(-1.0);
        eval_pair(st, gt, node, fma, fmv, want_heat ? hm : nullptr);
        if (k == 1) {
          const double r = 1.0 / (2.0 * dt);
          for (int i = 0; i < NC * 2; ++i) {
            fan[i] = (fpa[i] - fma[i]) * r;
            fvn[i] = (fpv[i] - fmv[i]) * r;
          }
          if (want_heat)
            for (int i = 0; i < 2; ++i) hcn[i] = (hp[i] - hm[i]) * r;
        } else {
          const double r = 1.0 / (dt * dt);
          const double* a0 = fa0 + node * NC * 2;
          const double* v0 = fv0 + node * NC * 2;
          for (int i = 0; i < NC * 2; ++i) {
            fan[i] = (fpa[i] - 2.0 * a0[i] + fma[i]) * r;
            fvn[i] = (fpv[i] - 2.0 * v0[i] + fmv[i]) * r;
          }
          if (want_heat) {
            const double* hh0 = h0 + node * 2;
            for (int i = 0; i < 2; ++i) hcn[i] = (hp[i] - 2.0 * hh0[i] + hm[i]) * r;
          }
        }
      } else {
        double f2a[NC * 2], f2v[NC * 2], fm2a[NC * 2], fm2v[NC * 2];
        double hp2[2], hm2[2];
        taylor(+2.0);
        eval_pair(st, gt, node, f2a, f2v, want_heat ? hp2 : nullptr);
        taylor(+1.0);
        eval_pair(st, gt, node, fpa, fpv, want_heat ? hp : nullptr);
        taylor(-1.0);
        eval_pair(st, gt, node, fma, fmv, want_heat ? hm : nullptr);
        taylor(-2.0);
        eval_pair(st, gt, node, fm2a, fm2v, want_heat ? hm2 : nullptr);
        if (k == 3) {
          const double r = 1.0 / (2.0 * dt * dt * dt);
          for (int i = 0; i < NC * 2; ++i) {
            fan[i] = (f2a[i] - 2.0 * fpa[i] + 2.0 * fma[i] - fm2a[i]) * r;
            fvn[i] = (f2v[i] - 2.0 * fpv[i] + 2.0 * fmv[i] - fm2v[i]) * r;
          }
          if (want_heat)
            for (int i = 0; i < 2; ++i)
              hcn[i] = (hp2[i] - 2.0 * hp[i] + 2.0 * hm[i] - hm2[i]) * r;
        } else { // k == 4
          const double r = 1.0 / (dt * dt * dt * dt);
          const double* a0 = fa0 + node * NC * 2;
          const double* v0 = fv0 + node * NC * 2;
          for (int i = 0; i < NC * 2; ++i) {
            fan[i] = (f2a[i] - 4.0 * fpa[i] + 6.0 * a0[i] - 4.0 * fma[i] + fm2a[i]) * r;
            fvn[i] = (f2v[i] - 4.0 * fpv[i] + 6.0 * v0[i] - 4.0 * fmv[i] + fm2v[i]) * r;
          }
          if (want_heat) {
            const double* hh0 = h0 + node * 2;
            for (int i = 0; i < 2; ++i)
              hcn[i] = (hp2[i] - 4.0 * hp[i] + 6.0 * hh0[i] - 4.0 * hm[i] + hm2[i]) * r;
          }
        }
      }
    }
    for (int i = 0; i < NN * NC * 2; ++i) {
      Fa[i] += ck * fac[i];
      Fv[i] += ck * fvc[i];
    }
    if (want_embedded && k == N)
      for (int i = 0; i < NN * NC * 2; ++i) {
        FaN[i] = ck * fac[i];
        FvN[i] = ck * fvc[i];
      }
    if (want_heat) {
      for (int i = 0; i < NN * 2; ++i) Ht[i] += ck * hc[i];
      if (want_embedded && k == N)
        for (int i = 0; i < NN * 2; ++i) HtN[i] = ck * hc[i];
    }
  }
}

/// FR update for one element, Eq. of the explicit LWFR scheme: collocation
/// divergence of the combined time-averaged flux plus correction terms from
/// the continuous numerical flux on the four faces.
template <int NP, int NC>
void update_element(double dt, const double* u, const double* Fa,
                    const double* Fv, const double* FaN, const double* FvN,
                    const double* fs_xl, const double* fs_xr,
                    const double* fs_yl, const double* fs_yr,
                    const double* fsl_xl, const double* fsl_xr,
                    const double* fsl_yl, const double* fsl_yr,
                    const double* Sh, const double* SN, const double* jac,
                    const double* D, const double* dgl, const double* dgr,
                    bool low, double* out_hi, double* out_lo) {
  constexpr int NN = NP * NP;
  double Fc[NN * NC * 2], FcL[NN * NC * 2];
  for (int i = 0; i < NN * NC * 2; ++i) Fc[i] = Fa[i] - Fv[i];
  if (low)
    for (int i = 0; i < NN * NC * 2; ++i) FcL[i] = Fc[i] - (FaN[i] - FvN[i]);

  auto run = [&](const double* F, const double* xl, const double* xr,
                 const double* yl, const double* yr, const double* S,
                 double* out) {
    for (int j = 0; j < NP; ++j)
      for (int i = 0; i < NP; ++i) {
        const int node = j * NP + i;
        const double s = dt / jac[node];
        for (int c = 0; c < NC; ++c) {
          double div = 0.0;
          for (int m = 0; m < NP; ++m) {
            div += D[i * NP + m] * F[((j * NP + m) * NC + c) * 2];
            div += D[j * NP + m] * F[((m * NP + i) * NC + c) * 2 + 1];
          }
          double corr =
              (xr[j * NC + c] - F[((j * NP + NP - 1) * NC + c) * 2]) * dgr[i] +
              (xl[j * NC + c] - F[((j * NP) * NC + c) * 2]) * dgl[i] +
              (yr[i * NC + c] - F[(((NP - 1) * NP + i) * NC + c) * 2 + 1]) * dgr[j] +
              (yl[i * NC + c] - F[(i * NC + c) * 2 + 1]) * dgl[j];
          double v = u[node * NC + c] - s * (div + corr);
          if (S) v += dt * S[node * NC + c];
          out[node * NC + c] = v;
        }
      }
  };
  run(Fc, fs_xl, fs_xr, fs_yl, fs_yr, Sh, out_hi);
  if (low) {
    double SL[NN * NC];
    const double* Slow = nullptr;
    if (Sh) {
      for (int i = 0; i < NN * NC; ++i) SL[i] = Sh[i] - SN[i];
      Slow = SL;
    }
    run(FcL, fsl_xl, fsl_xr, fsl_yl, fsl_yr, Slow, out_lo);
  }
}

} // namespace detail

/// Time-averaged data produced by the approximate Lax-Wendroff expansion,
/// nodal over the whole mesh: contravariant flux averages, the time-averaged
/// solution, their k=N top-order terms (embedded pair), the heat-flux average
/// (adiabatic walls) and the source average.
struct TimeAveragedData {
  std::vector<double> Fa, Fv; // ne*nn*nc*2
  std::vector<double> U;      // ne*nn*nc
  std::vector<double> FaN, FvN, UN;
  std::vector<double> Ht, HtN; // ne*nn*2
  std::vector<double> Sh, SN;  // ne*nn*nc
};

struct SolverOptions {
  int threads = 1;
  bool embedded = true;
};

/// Single-stage LWFR solver: BR1 gradient, approximate LW expansion,
/// D2-Rusanov/central interface fluxes, FR correction update.
template <class Eq>
class Solver {
public:
  static constexpr int NC = Eq::ncomp;

  Solver(const CurvilinearMesh& mesh, const GeometryField& geom,
         const Basis1D& basis, Eq eq, BoundaryTable bc, SolverOptions opt)
      : mesh_(mesh), geom_(geom), basis_(basis), eq_(std::move(eq)),
        bc_(std::move(bc)), opt_(opt) {
    const int ne = mesh.n_elements();
    const int nn = mesh.nodes_per_elem();
    const int np = mesh.npts1d();
    const int nf = static_cast<int>(mesh.faces().size());
    q_ = GradientField(ne, nn, NC);
    tav_.Fa.resize(static_cast<std::size_t>(ne) * nn * NC * 2);
    tav_.Fv.resize(tav_.Fa.size());
    tav_.U.resize(static_cast<std::size_t>(ne) * nn * NC);
    if (opt_.embedded) {
      tav_.FaN.resize(tav_.Fa.size());
      tav_.FvN.resize(tav_.Fa.size());
      tav_.UN.resize(tav_.U.size());
    }
    for (const auto& tag : bc_.side)
      if (tag.kind == BoundaryKind::noslip_adiabatic) want_heat_ = true;
    want_heat_ = want_heat_ && Eq::has_heat_flux;
    if (want_heat_) {
      tav_.Ht.resize(static_cast<std::size_t>(ne) * nn * 2);
      if (opt_.embedded) tav_.HtN.resize(tav_.Ht.size());
    }
    if (eq_.has_source()) {
      tav_.Sh.resize(tav_.U.size());
      if (opt_.embedded) tav_.SN.resize(tav_.U.size());
    }
    ustar_ = FaceData(nf, np, NC);
    fstar_hi_ = FaceData(nf, np, NC);
    if (opt_.embedded) fstar_lo_ = FaceData(nf, np, NC);
  }

  const Eq& equations() const { return eq_; }
  const GradientField& gradient() const { return q_; }
  const TimeAveragedData& time_averaged() const { return tav_; }
  const BoundaryTable& boundaries() const { return bc_; }
  bool embedded() const { return opt_.embedded; }

  /// BR1 auxiliary gradient of u at time t into the internal workspace.
  void compute_gradient(const NodalField& u, double t) {
    detail::compute_ustar(mesh_, eq_, bc_, u, t, ustar_);
    parallel_for(mesh_.n_elements(), opt_.threads, [&](int b, int e) {
      dispatch_np([&](auto np_tag) {
        detail::gradient_pass<Eq, np_tag.value>(mesh_, geom_, basis_, ustar_,
                                                u, q_, b, e);
      });
    });
  }

  /// Gradient solve plus the local approximate-LW expansion only; returns the
  /// freshly filled time-averaged data (diagnostics and order tests).
  const TimeAveragedData& expand(const NodalField& u, double t, double dt) {
    compute_gradient(u, t);
    expansion_phase(u, t, dt);
    return tav_;
  }

  /// One LWFR step: fills `hi` (and `lo` when the solver was built with the
  /// embedded option). Throws StateError on non-finite input or non-physical
  /// intermediate states; the input is never modified.
  void take_step(const NodalField& u, double t, double dt, NodalField& hi,
                 NodalField* lo) {
    for (double x : u.v)
      if (!std::isfinite(x)) throw StateError("non-finite input state");
    if (dt == 0.0) { // identity step
      hi.v = u.v;
      if (opt_.embedded && lo) lo->v = u.v;
      return;
    }
    const bool emb = opt_.embedded && lo != nullptr;
    compute_gradient(u, t);
    expansion_phase(u, t, dt);
    flux_face_pass(u, t, dt, emb);
    update_phase(u, dt, emb, hi, lo);
  }

private:
  template <class Fn>
  void dispatch_np(Fn&& fn) {
    switch (basis_.degree()) {
    case 1: fn(std::integral_constant<int, 2>{}); break;
    case 2: fn(std::integral_constant<int, 3>{}); break;
    case 3: fn(std::integral_constant<int, 4>{}); break;
    case 4: fn(std::integral_constant<int, 5>{}); break;
    default: throw ConfigError("unsupported degree");
    }
  }

  void expansion_phase(const NodalField& u, double t, double dt) {
    const int nn = mesh_.nodes_per_elem();
    const bool emb = opt_.embedded;
    const bool src = eq_.has_source();
    parallel_for(mesh_.n_elements(), opt_.threads, [&](int b, int e1) {
      dispatch_np([&](auto np_tag) {
        constexpr int NP = np_tag.value;
        for (int e = b; e < e1; ++e) {
          const std::size_t o2 = static_cast<std::size_t>(e) * nn * NC * 2;
          const std::size_t o1 = static_cast<std::size_t>(e) * nn * NC;
          const std::size_t oh = static_cast<std::size_t>(e) * nn * 2;
          detail::ladder_element<Eq, NP>(
              eq_, e, t, dt, u.elem(e), q_.elem(e), geom_.jac_elem(e),
              geom_.met_elem(e), basis_.diff().data(),
              mesh_.xcoords().data() + static_cast<std::size_t>(e) * nn,
              mesh_.ycoords().data() + static_cast<std::size_t>(e) * nn, emb,
              want_heat_, src, tav_.Fa.data() + o2, tav_.Fv.data() + o2,
              tav_.U.data() + o1, emb ? tav_.FaN.data() + o2 : nullptr,
              emb ? tav_.FvN.data() + o2 : nullptr,
              emb ? tav_.UN.data() + o1 : nullptr,
              want_heat_ ? tav_.Ht.data() + oh : nullptr,
              (want_heat_ && emb) ? tav_.HtN.data() + oh : nullptr,
              src ? tav_.Sh.data() + o1 : nullptr,
              (src && emb) ? tav_.SN.data() + o1 : nullptr);
        }
      });
    });
  }

  // nodal trace helpers: value of the dir-component of a ne*nn*nc*2 array
  double trace2(const std::vector<double>& a, int e, int node, int c,
                int dir) const {
    const int nn = mesh_.nodes_per_elem();
    return a[((static_cast<std::size_t>(e) * nn + node) * NC + c) * 2 + dir];
  }
  double trace1(const std::vector<double>& a, int e, int node, int c) const {
    const int nn = mesh_.nodes_per_elem();
    return a[(static_cast<std::size_t>(e) * nn + node) * NC + c];
  }

  void flux_face_pass(const NodalField& u, double t, double dt, bool emb) {
    const int np = mesh_.npts1d();
    const auto& faces = mesh_.faces();
    parallel_for(static_cast<int>(faces.size()), opt_.threads, [&](int fb, int fe) {
      for (int f = fb; f < fe; ++f) {
        const Face& fc = faces[f];
        const int dir = fc.dir;
        for (int k = 0; k < np; ++k) {
          double favM[NC], favP[NC], fvvM[NC], fvvP[NC], UM[NC], UP[NC];
          double out_hi[NC], out_lo[NC];
          if (fc.interior()) {
            const int eM = fc.elem_minus, eP = fc.elem_plus;
            const int nM = detail::face_node(dir, 1, k, np);
            const int nP = detail::face_node(dir, 0, k, np);
            const auto fpm = face_point_metric(geom_, basis_, eM, dir, 1, k);
            const double lam =
                fpm.scale * eq_.wave_speed(u.at(eM, nM), u.at(eP, nP), fpm.nx, fpm.ny);
            for (int c = 0; c < NC; ++c) {
              favM[c] = trace2(tav_.Fa, eM, nM, c, dir);
              favP[c] = trace2(tav_.Fa, eP, nP, c, dir);
              fvvM[c] = trace2(tav_.Fv, eM, nM, c, dir);
              fvvP[c] = trace2(tav_.Fv, eP, nP, c, dir);
              UM[c] = trace1(tav_.U, eM, nM, c);
              UP[c] = trace1(tav_.U, eP, nP, c);
            }
            combine(favM, favP, fvvM, fvvP, UM, UP, lam, out_hi);
            if (emb) {
              for (int c = 0; c < NC; ++c) {
                favM[c] -= trace2(tav_.FaN, eM, nM, c, dir);
                favP[c] -= trace2(tav_.FaN, eP, nP, c, dir);
                fvvM[c] -= trace2(tav_.FvN, eM, nM, c, dir);
                fvvP[c] -= trace2(tav_.FvN, eP, nP, c, dir);
                UM[c] -= trace1(tav_.UN, eM, nM, c);
                UP[c] -= trace1(tav_.UN, eP, nP, c);
              }
              combine(favM, favP, fvvM, fvvP, UM, UP, lam, out_lo);
            }
          } else {
            boundary_point(fc, u, t, dt, k, false, out_hi);
            if (emb) boundary_point(fc, u, t, dt, k, true, out_lo);
          }
          double* hi = fstar_hi_.at(f, k);
          for (int c = 0; c < NC; ++c) hi[c] = out_hi[c];
          if (emb) {
            double* lo = fstar_lo_.at(f, k);
            for (int c = 0; c < NC; ++c) lo[c] = out_lo[c];
          }
        }
      }
    });
  }

  static void combine(const double* faM, const double* faP, const double* fvM,
                      const double* fvP, const double* UM, const double* UP,
                      double lam, double* out) {
    double adv[NC], visc[NC];
    rusanov_timeavg_flux(faM, faP, UM, UP, lam, NC, adv);
    central_viscous_flux(fvM, fvP, NC, visc);
    for (int c = 0; c < NC; ++c) out[c] = adv[c] - visc[c];
  }

  void boundary_point(const Face& fc, const NodalField& u, double t, double dt,
                      int k, bool low, double* out) {
    const int np = mesh_.npts1d();
    const int dir = fc.dir;
    const int e = fc.inner_elem();
    const bool minus = fc.inner_is_minus();
    const int node = detail::face_node(dir, minus ? 1 : 0, k, np);
    const BoundaryTag& tag = bc_.at(fc.boundary_side);
    double fa_in[NC], fv_in[NC], U_in[NC];
    for (int c = 0; c < NC; ++c) {
      fa_in[c] = trace2(tav_.Fa, e, node, c, dir);
      fv_in[c] = trace2(tav_.Fv, e, node, c, dir);
      U_in[c] = trace1(tav_.U, e, node, c);
    }
    double heat_n = 0.0;
    if (want_heat_) {
      const int nn = mesh_.nodes_per_elem();
      heat_n = tav_.Ht[(static_cast<std::size_t>(e) * nn + node) * 2 + dir];
    }
    if (low) {
      for (int c = 0; c < NC; ++c) {
        fa_in[c] -= trace2(tav_.FaN, e, node, c, dir);
        fv_in[c] -= trace2(tav_.FvN, e, node, c, dir);
        U_in[c] -= trace1(tav_.UN, e, node, c);
      }
      if (want_heat_) {
        const int nn = mesh_.nodes_per_elem();
        heat_n -= tav_.HtN[(static_cast<std::size_t>(e) * nn + node) * 2 + dir];
      }
    }
    const double x = mesh_.x(e, node), y = mesh_.y(e, node);
    double fa_out[NC], fv_out[NC], U_out[NC];
    boundary_flux_traces(eq_, tag, fa_in, fv_in, U_in, heat_n, x, y, t, dt,
                         geom_.met(e, node), dir, fa_out, fv_out, U_out);
    // wave speed from the level-n inner trace and its boundary ghost
    const double* un = u.at(e, node);
    double ghost[NC];
    if (tag.kind == BoundaryKind::dirichlet_exact ||
        tag.kind == BoundaryKind::inflow_profile)
      detail::prescribed_state(eq_, tag, x, y, t, ghost);
    else
      detail::wall_mirror(eq_, tag, un, ghost);
    const auto fpm = face_point_metric(geom_, basis_, e, dir, minus ? 1 : 0, k);
    const double lam = fpm.scale * eq_.wave_speed(un, ghost, fpm.nx, fpm.ny);
    if (minus)
      combine(fa_in, fa_out, fv_in, fv_out, U_in, U_out, lam, out);
    else
      combine(fa_out, fa_in, fv_out, fv_in, U_out, U_in, lam, out);
  }

  void update_phase(const NodalField& u, double dt, bool emb, NodalField& hi,
                    NodalField* lo) {
    const int nn = mesh_.nodes_per_elem();
    const int np = mesh_.npts1d();
    std::vector<double> dgl(np), dgr(np);
    for (int i = 0; i < np; ++i) {
      dgl[i] = basis_.dgl(i);
      dgr[i] = basis_.dgr(i);
    }
    parallel_for(mesh_.n_elements(), opt_.threads, [&](int b, int e1) {
      dispatch_np([&](auto np_tag) {
        constexpr int NP = np_tag.value;
        for (int e = b; e < e1; ++e) {
          const std::size_t o2 = static_cast<std::size_t>(e) * nn * NC * 2;
          const std::size_t o1 = static_cast<std::size_t>(e) * nn * NC;
          const int fxl = mesh_.elem_face(e, 0, 0), fxr = mesh_.elem_face(e, 0, 1);
          const int fyl = mesh_.elem_face(e, 1, 0), fyr = mesh_.elem_face(e, 1, 1);
          detail::update_element<NP, NC>(
              dt, u.elem(e), tav_.Fa.data() + o2, tav_.Fv.data() + o2,
              emb ? tav_.FaN.data() + o2 : nullptr,
              emb ? tav_.FvN.data() + o2 : nullptr, fstar_hi_.at(fxl, 0),
              fstar_hi_.at(fxr, 0), fstar_hi_.at(fyl, 0), fstar_hi_.at(fyr, 0),
              emb ? fstar_lo_.at(fxl, 0) : nullptr,
              emb ? fstar_lo_.at(fxr, 0) : nullptr,
              emb ? fstar_lo_.at(fyl, 0) : nullptr,
              emb ? fstar_lo_.at(fyr, 0) : nullptr,
              eq_.has_source() ? tav_.Sh.data() + o1 : nullptr,
              (eq_.has_source() && emb) ? tav_.SN.data() + o1 : nullptr,
              geom_.jac_elem(e), basis_.diff().data(), dgl.data(), dgr.data(),
              emb, hi.elem(e), emb ? lo->elem(e) : nullptr);
        }
      });
    });
  }

  const CurvilinearMesh& mesh_;
  const GeometryField& geom_;
  const Basis1D& basis_;
  Eq eq_;
  BoundaryTable bc_;
  SolverOptions opt_;
  bool want_heat_ = false;
  GradientField q_;
  TimeAveragedData tav_;
  FaceData ustar_, fstar_hi_, fstar_lo_;
};

} // namespace lwfr
