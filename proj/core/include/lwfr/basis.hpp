#pragma once

#include <utility>
#include <vector>

namespace lwfr {

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence. Stable for the small n used here.
std::pair<double, double> legendre(int n, double x);

/// Gauss-Legendre-Lobatto nodes of degree N (N+1 points in [-1,1], endpoints
/// included, strictly increasing). Newton iteration on P_N' with Chebyshev
/// initial guesses, tolerance 1e-15. Valid for any N >= 1.
std::vector<double> gll_nodes(int degree);

/// GLL quadrature weights for the given nodes: w_i = 2 / (N(N+1) P_N(x_i)^2).
/// Exact for polynomials of degree <= 2N-1; weights sum to 2.
std::vector<double> gll_weights(int degree, const std::vector<double>& nodes);

/// Collocation differentiation matrix for an arbitrary node set, row-major:
/// D[i*(n)+j] = l_j'(x_i). Diagonal entries are set to the negated row sum of
/// the off-diagonal entries so constants differentiate to zero at round-off.
std::vector<double> differentiation_matrix(const std::vector<double>& nodes);

/// Radau correction functions g_L, g_R of degree N+1 and their derivatives,
/// evaluated at the given nodes. g_L(-1)=1, g_L(+1)=0, g_R(x)=g_L(-x).
struct RadauCorrection {
  std::vector<double> gl, gr;   // values at nodes
  std::vector<double> dgl, dgr; // derivatives at nodes
};
RadauCorrection radau_correction(int degree, const std::vector<double>& nodes);

/// One-dimensional GLL nodal machinery of degree N: nodes, weights,
/// differentiation matrix and FR correction function data. Immutable after
/// construction; safe to share across threads.
class Basis1D {
public:
  /// Supported degrees are 1..4; anything else throws ConfigError.
  explicit Basis1D(int degree);

  int degree() const { return degree_; }
  int npts() const { return degree_ + 1; }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& diff() const { return diff_; }
  double node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }
  double diff(int i, int j) const { return diff_[i * (degree_ + 1) + j]; }

  double gl(int i) const { return corr_.gl[i]; }
  double gr(int i) const { return corr_.gr[i]; }
  double dgl(int i) const { return corr_.dgl[i]; }
  double dgr(int i) const { return corr_.dgr[i]; }

private:
  int degree_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> diff_;
  RadauCorrection corr_;
};

/// GLL basis of degree N with Radau corrections.
inline Basis1D gll_basis(int degree) { return Basis1D(degree); }

/// Evaluate the Lagrange interpolant through (nodes, values) at x
/// (barycentric second form). Used by tests and diagnostics.
double lagrange_interpolate(const std::vector<double>& nodes,
                            const std::vector<double>& values, double x);

} // namespace lwfr
