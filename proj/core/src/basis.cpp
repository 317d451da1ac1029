#include "lwfr/basis.hpp"

#include <cmath>
#include <cstddef>

#include "lwfr/errors.hpp"

namespace lwfr {

std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // derivative from (1-x^2) P_n' = n (P_{n-1} - x P_n); endpoints by the
  // known closed form.
  double dp;
  if (std::abs(1.0 - x * x) < 1e-14) {
    const double sgn = (x > 0.0) ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0);
    dp = sgn * 0.5 * n * (n + 1);
  } else {
    dp = n * (p0 - x * p1) / (1.0 - x * x);
  }
  return {p1, dp};
}

std::vector<double> gll_nodes(int degree) {
  const int n = degree;
  std::vector<double> x(n + 1);
  x[0] = -1.0;
  x[n] = 1.0;
  const double pi = std::acos(-1.0);
  for (int i = 1; i < n; ++i) {
    // interior nodes are the roots of P_N'; Chebyshev-Lobatto initial guess
    double xi = -std::cos(pi * i / n);
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, xi);
      // P_N'' from the Legendre ODE: (1-x^2) P'' = 2x P' - N(N+1) P
      const double ddp = (2.0 * xi * dp - n * (n + 1) * p) / (1.0 - xi * xi);
      const double step = dp / ddp;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = xi;
  }
  if (n % 2 == 0) x[n / 2] = 0.0;
  return x;
}

std::vector<double> gll_weights(int degree, const std::vector<double>& nodes) {
  const int n = degree;
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double p = legendre(n, nodes[i]).first;
    w[i] = 2.0 / (n * (n + 1) * p * p);
  }
  return w;
}

std::vector<double> differentiation_matrix(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  // barycentric weights
  std::vector<double> lam(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (k != i) lam[i] /= (nodes[i] - nodes[k]);
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d[i * n + j] = (lam[j] / lam[i]) / (nodes[i] - nodes[j]);
      rowsum += d[i * n + j];
    }
    d[i * n + i] = -rowsum; // rows of D annihilate constants
  }
  return d;
}

RadauCorrection radau_correction(int degree, const std::vector<double>& nodes) {
  const int n = degree;
  const int np = static_cast<int>(nodes.size());
  RadauCorrection c;
  c.gl.resize(np);
  c.gr.resize(np);
  c.dgl.resize(np);
  c.dgr.resize(np);
  // g_L = (-1)^N / 2 * (P_N - P_{N+1}), the right-Radau polynomial with
  // g_L(-1) = 1, g_L(+1) = 0; g_R is its mirror image.
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  for (int i = 0; i < np; ++i) {
    const auto [pn, dpn] = legendre(n, nodes[i]);
    const auto [pn1, dpn1] = legendre(n + 1, nodes[i]);
    c.gl[i] = 0.5 * sgn * (pn - pn1);
    c.dgl[i] = 0.5 * sgn * (dpn - dpn1);
    const auto [qn, dqn] = legendre(n, -nodes[i]);
    const auto [qn1, dqn1] = legendre(n + 1, -nodes[i]);
    c.gr[i] = 0.5 * sgn * (qn - qn1);
    c.dgr[i] = -0.5 * sgn * (dqn - dqn1);
  }
  return c;
}

Basis1D::Basis1D(int degree) : degree_(degree) {
  if (degree < 1 || degree > 4)
    throw ConfigError("solution degree must be between 1 and 4, got " +
                      std::to_string(degree));
  nodes_ = gll_nodes(degree);
  weights_ = gll_weights(degree, nodes_);
  diff_ = differentiation_matrix(nodes_);
  corr_ = radau_correction(degree, nodes_);
}

double lagrange_interpolate(const std::vector<double>& nodes,
                            const std::vector<double>& values, double x) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> lam(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (k != i) lam[i] /= (nodes[i] - nodes[k]);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x - nodes[i];
    if (dx == 0.0) return values[i];
    const double t = lam[i] / dx;
    num += t * values[i];
    den += t;
  }
  return num / den;
}

} // namespace lwfr
