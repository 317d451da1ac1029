#pragma once

#include <vector>

#include "lwfr/basis.hpp"
#include "lwfr/boundary.hpp"
#include "lwfr/field.hpp"
#include "lwfr/geometry.hpp"
#include "lwfr/mesh.hpp"

namespace lwfr {

/// Central interface value u* = (u+ + u-)/2, pointwise over components.
inline void interface_solution_average(const double* uL, const double* uR,
                                       int nc, double* out) {
  for (int c = 0; c < nc; ++c) out[c] = 0.5 * (uL[c] + uR[c]);
}

/// Per-face-point storage: nc values at each of the np points of every face.
struct FaceData {
  FaceData() = default;
  FaceData(int nfaces, int np, int nc)
      : np(np), nc(nc), v(static_cast<std::size_t>(nfaces) * np * nc, 0.0) {}
  double* at(int f, int k) { return v.data() + (static_cast<std::size_t>(f) * np + k) * nc; }
  const double* at(int f, int k) const { return v.data() + (static_cast<std::size_t>(f) * np + k) * nc; }
  int np = 0, nc = 0;
  std::vector<double> v;
};

namespace detail {

/// node index of tangential point k on the (dir, side) face of an element
inline int face_node(int dir, int side, int k, int np) {
  const int edge = side ? np - 1 : 0;
  return dir == 0 ? k * np + edge : edge * np + k;
}

/// u* on every face: central average of the two traces on interior faces,
/// boundary outer trace supplied by boundary_solution_trace.
template <class Eq>
void compute_ustar(const CurvilinearMesh& mesh, const Eq& eq,
                   const BoundaryTable& bc, const NodalField& u, double t,
                   FaceData& ustar) {
  constexpr int nc = Eq::ncomp;
  const int np = mesh.npts1d();
  const auto& faces = mesh.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& fc = faces[f];
    for (int k = 0; k < np; ++k) {
      if (fc.interior()) {
        const double* um = u.at(fc.elem_minus, face_node(fc.dir, 1, k, np));
        const double* up = u.at(fc.elem_plus, face_node(fc.dir, 0, k, np));
        interface_solution_average(um, up, nc, ustar.at(static_cast<int>(f), k));
      } else {
        const int e = fc.inner_elem();
        const int node = face_node(fc.dir, fc.inner_is_minus() ? 1 : 0, k, np);
        const double* ui = u.at(e, node);
        double outer[nc] = {};
        boundary_solution_trace(eq, bc.at(fc.boundary_side), ui,
                                mesh.x(e, node), mesh.y(e, node), t, outer);
        interface_solution_average(ui, outer, nc, ustar.at(static_cast<int>(f), k));
      }
    }
  }
}

/// Element-local corrected gradient: collocation derivative of u plus the
/// correction-derivative terms (u* - u)(face) g'_s, then q = M grad_xi u / J.
template <int NP, int NC>
void gradient_element(const double* u, const double* ustar_xl,
                      const double* ustar_xr, const double* ustar_yl,
                      const double* ustar_yr, const double* D,
                      const double* dgl, const double* dgr, const double* jac,
                      const double* met, double* q) {
  for (int j = 0; j < NP; ++j)
    for (int i = 0; i < NP; ++i) {
      const int node = j * NP + i;
      double dxi[NC], deta[NC];
      for (int c = 0; c < NC; ++c) {
        double sx = 0, se = 0;
        for (int m = 0; m < NP; ++m) {
          sx += D[i * NP + m] * u[(j * NP + m) * NC + c];
          se += D[j * NP + m] * u[(m * NP + i) * NC + c];
        }
        dxi[c] = sx;
        deta[c] = se;
      }
      for (int c = 0; c < NC; ++c) {
        dxi[c] += (ustar_xr[j * NC + c] - u[(j * NP + NP - 1) * NC + c]) * dgr[i] +
                  (ustar_xl[j * NC + c] - u[(j * NP) * NC + c]) * dgl[i];
        deta[c] += (ustar_yr[i * NC + c] - u[((NP - 1) * NP + i) * NC + c]) * dgr[j] +
                   (ustar_yl[i * NC + c] - u[i * NC + c]) * dgl[j];
      }
      const double inv_j = 1.0 / jac[node];
      const double* m4 = met + node * 4;
      for (int c = 0; c < NC; ++c) {
        q[(node * NC + c) * 2 + 0] = (m4[0] * dxi[c] + m4[2] * deta[c]) * inv_j;
        q[(node * NC + c) * 2 + 1] = (m4[1] * dxi[c] + m4[3] * deta[c]) * inv_j;
      }
    }
}

template <class Eq, int NP>
void gradient_pass(const CurvilinearMesh& mesh, const GeometryField& geom,
                   const Basis1D& basis, const FaceData& ustar,
                   const NodalField& u, GradientField& q, int e0, int e1) {
  constexpr int NC = Eq::ncomp;
  const double* D = basis.diff().data();
  std::vector<double> dglv(NP), dgrv(NP);
  for (int i = 0; i < NP; ++i) {
    dglv[i] = basis.dgl(i);
    dgrv[i] = basis.dgr(i);
  }
  for (int e = e0; e < e1; ++e) {
    const int fxl = mesh.elem_face(e, 0, 0), fxr = mesh.elem_face(e, 0, 1);
    const int fyl = mesh.elem_face(e, 1, 0), fyr = mesh.elem_face(e, 1, 1);
    gradient_element<NP, NC>(u.elem(e), ustar.at(fxl, 0), ustar.at(fxr, 0),
                             ustar.at(fyl, 0), ustar.at(fyr, 0), D, dglv.data(),
                             dgrv.data(), geom.jac_elem(e), geom.met_elem(e),
                             q.elem(e));
  }
}

} // namespace detail

/// BR1 auxiliary gradient of a nodal field: u* face averages, corrected
/// reference gradient, then the metric transform to physical space.
template <class Eq>
GradientField compute_auxiliary_gradient(const NodalField& u,
                                         const CurvilinearMesh& mesh,
                                         const GeometryField& geom,
                                         const Basis1D& basis, const Eq& eq,
                                         const BoundaryTable& bc, double t) {
  FaceData ustar(static_cast<int>(mesh.faces().size()), mesh.npts1d(), Eq::ncomp);
  detail::compute_ustar(mesh, eq, bc, u, t, ustar);
  GradientField q(u.ne, u.nn, u.ncomp);
  const int ne = mesh.n_elements();
  switch (basis.degree()) {
  case 1: detail::gradient_pass<Eq, 2>(mesh, geom, basis, ustar, u, q, 0, ne); break;
  case 2: detail::gradient_pass<Eq, 3>(mesh, geom, basis, ustar, u, q, 0, ne); break;
  case 3: detail::gradient_pass<Eq, 4>(mesh, geom, basis, ustar, u, q, 0, ne); break;
  case 4: detail::gradient_pass<Eq, 5>(mesh, geom, basis, ustar, u, q, 0, ne); break;
  default: throw ConfigError("unsupported degree");
  }
  return q;
}

} // namespace lwfr
