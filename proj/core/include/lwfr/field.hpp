#pragma once

#include <cstring>
#include <vector>

namespace lwfr {

/// Per-element tensor-product grid of p-component state values at solution
/// points. Storage is element-major, node-major, component-innermost.
class NodalField {
public:
  NodalField() = default;
  NodalField(int ne, int nn, int ncomp)
      : ne(ne), nn(nn), ncomp(ncomp),
        v(static_cast<std::size_t>(ne) * nn * ncomp, 0.0) {}

  double* at(int e, int node) { return v.data() + (static_cast<std::size_t>(e) * nn + node) * ncomp; }
  const double* at(int e, int node) const { return v.data() + (static_cast<std::size_t>(e) * nn + node) * ncomp; }
  double* elem(int e) { return v.data() + static_cast<std::size_t>(e) * nn * ncomp; }
  const double* elem(int e) const { return v.data() + static_cast<std::size_t>(e) * nn * ncomp; }

  std::size_t size() const { return v.size(); }
  void fill(double value) { std::fill(v.begin(), v.end(), value); }

  int ne = 0, nn = 0, ncomp = 0;
  std::vector<double> v;
};

/// Physical-space gradient field: p x 2 values per solution point, laid out
/// (component, direction)-innermost.
class GradientField {
public:
  GradientField() = default;
  GradientField(int ne, int nn, int ncomp)
      : ne(ne), nn(nn), ncomp(ncomp),
        v(static_cast<std::size_t>(ne) * nn * ncomp * 2, 0.0) {}

  double* at(int e, int node) { return v.data() + (static_cast<std::size_t>(e) * nn + node) * ncomp * 2; }
  const double* at(int e, int node) const { return v.data() + (static_cast<std::size_t>(e) * nn + node) * ncomp * 2; }
  double* elem(int e) { return v.data() + static_cast<std::size_t>(e) * nn * ncomp * 2; }
  const double* elem(int e) const { return v.data() + static_cast<std::size_t>(e) * nn * ncomp * 2; }

  int ne = 0, nn = 0, ncomp = 0;
  std::vector<double> v;
};

} // namespace lwfr
