#pragma once

#include <vector>

#include "lwfr/basis.hpp"
#include "lwfr/mesh.hpp"

namespace lwfr {

/// Metric terms at the solution points of every element: Jacobian J > 0 and
/// the scaled contravariant vectors Ja^1 = (y_eta, -x_eta),
/// Ja^2 = (-y_xi, x_xi), all by collocation differentiation of the nodal
/// coordinate polynomials. Layout of `metric`: 4 values per node,
/// (Ja1x, Ja1y, Ja2x, Ja2y). Immutable after construction.
class GeometryField {
public:
  GeometryField() = default;
  GeometryField(int ne, int nn)
      : ne(ne), nn(nn), jac(static_cast<std::size_t>(ne) * nn, 0.0),
        metric(static_cast<std::size_t>(ne) * nn * 4, 0.0) {}

  double J(int e, int node) const { return jac[static_cast<std::size_t>(e) * nn + node]; }
  const double* met(int e, int node) const {
    return metric.data() + (static_cast<std::size_t>(e) * nn + node) * 4;
  }
  double* met(int e, int node) {
    return metric.data() + (static_cast<std::size_t>(e) * nn + node) * 4;
  }
  const double* jac_elem(int e) const { return jac.data() + static_cast<std::size_t>(e) * nn; }
  const double* met_elem(int e) const { return metric.data() + static_cast<std::size_t>(e) * nn * 4; }

  int ne = 0, nn = 0;
  std::vector<double> jac;
  std::vector<double> metric;
};

/// Metrics by collocation differentiation of the nodal map. Throws
/// GeometryError reporting the offending element when J <= 0 anywhere.
GeometryField compute_metrics(const CurvilinearMesh& mesh,
                              const Basis1D& basis);

/// Max-norm over all elements/nodes/components of the discrete divergence of
/// the metric terms, d_xi(Ja^1) + d_eta(Ja^2).
double metric_identity_residual(const GeometryField& geom,
                                const Basis1D& basis);

/// Unit physical normal and surface scaling |Ja^dir| at one face point of an
/// element. `side` 0/1 selects the L/R face in `dir`; `k` is the tangential
/// point index. The normal points outward from the element.
struct FacePointMetric {
  double nx, ny;  // outward unit normal
  double scale;   // |Ja^dir| at the face point
};
FacePointMetric face_point_metric(const GeometryField& geom,
                                  const Basis1D& basis, int elem, int dir,
                                  int side, int k);

/// Minimum Jacobian over the whole mesh (diagnostic for check-mesh).
double min_jacobian(const GeometryField& geom);

} // namespace lwfr
