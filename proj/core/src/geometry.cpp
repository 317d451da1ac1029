#include "lwfr/geometry.hpp"

#include <cmath>
#include <string>

#include "lwfr/errors.hpp"

namespace lwfr {

GeometryField compute_metrics(const CurvilinearMesh& mesh,
                              const Basis1D& basis) {
  const int np = basis.npts();
  const int nn = np * np;
  const int ne = mesh.n_elements();
  const double* D = basis.diff().data();
  GeometryField g(ne, nn);

  for (int e = 0; e < ne; ++e) {
    const double* xs = mesh.xcoords().data() + static_cast<std::size_t>(e) * nn;
    const double* ys = mesh.ycoords().data() + static_cast<std::size_t>(e) * nn;
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        double x_xi = 0, y_xi = 0, x_eta = 0, y_eta = 0;
        for (int m = 0; m < np; ++m) {
          const double dxi = D[i * np + m];
          x_xi += dxi * xs[j * np + m];
          y_xi += dxi * ys[j * np + m];
          const double det = D[j * np + m];
          x_eta += det * xs[m * np + i];
          y_eta += det * ys[m * np + i];
        }
        const int node = j * np + i;
        const double jac = x_xi * y_eta - x_eta * y_xi;
        if (!(jac > 0.0))
          throw GeometryError("non-positive Jacobian " + std::to_string(jac) +
                              " in element " + std::to_string(e) + ", node " +
                              std::to_string(node));
        g.jac[static_cast<std::size_t>(e) * nn + node] = jac;
        double* met = g.met(e, node);
        met[0] = y_eta;  // Ja^1_x
        met[1] = -x_eta; // Ja^1_y
        met[2] = -y_xi;  // Ja^2_x
        met[3] = x_xi;   // Ja^2_y
      }
  }
  return g;
}

double metric_identity_residual(const GeometryField& geom,
                                const Basis1D& basis) {
  const int np = basis.npts();
  const int nn = np * np;
  const double* D = basis.diff().data();
  double worst = 0.0;
  for (int e = 0; e < geom.ne; ++e) {
    const double* met = geom.met_elem(e);
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        double rx = 0, ry = 0;
        for (int m = 0; m < np; ++m) {
          const double dxi = D[i * np + m];
          rx += dxi * met[(j * np + m) * 4 + 0];
          ry += dxi * met[(j * np + m) * 4 + 1];
          const double det = D[j * np + m];
          rx += det * met[(m * np + i) * 4 + 2];
          ry += det * met[(m * np + i) * 4 + 3];
        }
        worst = std::max(worst, std::max(std::abs(rx), std::abs(ry)));
      }
  }
  return worst;
}

FacePointMetric face_point_metric(const GeometryField& geom,
                                  const Basis1D& basis, int elem, int dir,
                                  int side, int k) {
  const int np = basis.npts();
  const int edge = (side == 1) ? np - 1 : 0;
  const int node = (dir == 0) ? k * np + edge : edge * np + k;
  const double* met = geom.met(elem, node);
  const double ax = met[2 * dir + 0];
  const double ay = met[2 * dir + 1];
  const double s = std::sqrt(ax * ax + ay * ay);
  const double sgn = (side == 1) ? 1.0 : -1.0; // outward on R, inward-negated on L
  return {sgn * ax / s, sgn * ay / s, s};
}

double min_jacobian(const GeometryField& geom) {
  double mn = geom.jac.empty() ? 0.0 : geom.jac[0];
  for (double j : geom.jac) mn = std::min(mn, j);
  return mn;
}

} // namespace lwfr
