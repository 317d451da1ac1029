#include "lwfr/mesh.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "lwfr/errors.hpp"
#include "lwfr/field.hpp"
#include "lwfr/geometry.hpp"

namespace lwfr {

namespace {

// Global 1-D node table along one direction: n*N+1 distinct positions, so
// adjacent elements read the same stored double at their shared face.
std::vector<double> node_table(int n, double lo, double hi,
                               const std::vector<double>& ref) {
  const int deg = static_cast<int>(ref.size()) - 1;
  const double h = (hi - lo) / n;
  std::vector<double> t(static_cast<std::size_t>(n) * deg + 1);
  for (int e = 0; e < n; ++e) {
    for (int i = 0; i <= deg; ++i) {
      if (i == deg && e < n - 1) continue; // written by the next element's i=0
      double pos = lo + h * (e + 0.5 * (ref[i] + 1.0));
      if (e == 0 && i == 0) pos = lo;
      if (e == n - 1 && i == deg) pos = hi;
      t[static_cast<std::size_t>(e) * deg + i] = pos;
    }
  }
  // shared entries: element e's node deg == element e+1's node 0
  for (int e = 0; e + 1 < n; ++e) {
    const double pos = lo + h * (e + 1);
    t[static_cast<std::size_t>(e) * deg + deg] = pos;
  }
  return t;
}

void build_faces(CurvilinearMesh& m, int nx, int ny, bool px, bool py,
                 std::vector<Face>& faces, std::vector<int>& elem_face) {
  (void)m;
  auto eid = [nx](int ex, int ey) { return ey * nx + ex; };
  elem_face.assign(static_cast<std::size_t>(nx) * ny * 4, -1);
  auto set_slot = [&](int e, int dir, int side, int f) {
    elem_face[4 * e + 2 * dir + side] = f;
  };
  // dir 0 faces (normal along xi): columns fx = 0..nx
  for (int ey = 0; ey < ny; ++ey) {
    for (int fx = 0; fx <= nx; ++fx) {
      if (fx == nx && px) continue; // wrapped into fx == 0
      Face f;
      f.dir = 0;
      if (fx > 0 && fx < nx) {
        f.elem_minus = eid(fx - 1, ey);
        f.elem_plus = eid(fx, ey);
      } else if (fx == 0) {
        if (px) {
          f.elem_minus = eid(nx - 1, ey);
          f.elem_plus = eid(0, ey);
        } else {
          f.elem_plus = eid(0, ey);
          f.boundary_side = static_cast<int>(Side::Left);
        }
      } else { // fx == nx, not periodic
        f.elem_minus = eid(nx - 1, ey);
        f.boundary_side = static_cast<int>(Side::Right);
      }
      const int id = static_cast<int>(faces.size());
      faces.push_back(f);
      if (f.elem_minus >= 0) set_slot(f.elem_minus, 0, 1, id); // its R face
      if (f.elem_plus >= 0) set_slot(f.elem_plus, 0, 0, id);   // its L face
    }
  }
  // dir 1 faces (normal along eta): rows fy = 0..ny
  for (int fy = 0; fy <= ny; ++fy) {
    if (fy == ny && py) continue;
    for (int ex = 0; ex < nx; ++ex) {
      Face f;
      f.dir = 1;
      if (fy > 0 && fy < ny) {
        f.elem_minus = eid(ex, fy - 1);
        f.elem_plus = eid(ex, fy);
      } else if (fy == 0) {
        if (py) {
          f.elem_minus = eid(ex, ny - 1);
          f.elem_plus = eid(ex, 0);
        } else {
          f.elem_plus = eid(ex, 0);
          f.boundary_side = static_cast<int>(Side::Bottom);
        }
      } else {
        f.elem_minus = eid(ex, ny - 1);
        f.boundary_side = static_cast<int>(Side::Top);
      }
      const int id = static_cast<int>(faces.size());
      faces.push_back(f);
      if (f.elem_minus >= 0) set_slot(f.elem_minus, 1, 1, id);
      if (f.elem_plus >= 0) set_slot(f.elem_plus, 1, 0, id);
    }
  }
}

} // namespace

CurvilinearMesh make_cartesian_mesh(int nx, int ny, const Rect& dom,
                                    const Basis1D& basis, bool px, bool py) {
  if (nx < 1 || ny < 1)
    throw ConfigError("mesh resolution must be positive, got " +
                      std::to_string(nx) + "x" + std::to_string(ny));
  if (!(dom.xmax > dom.xmin) || !(dom.ymax > dom.ymin))
    throw ConfigError("mesh domain rectangle is empty");
  CurvilinearMesh m;
  m.nx_ = nx;
  m.ny_ = ny;
  m.degree_ = basis.degree();
  m.domain_ = dom;
  m.periodic_x_ = px;
  m.periodic_y_ = py;
  const int np = basis.npts();
  const int nn = np * np;
  m.xc_.resize(static_cast<std::size_t>(nx) * ny * nn);
  m.yc_.resize(static_cast<std::size_t>(nx) * ny * nn);

  const auto tx = node_table(nx, dom.xmin, dom.xmax, basis.nodes());
  const auto ty = node_table(ny, dom.ymin, dom.ymax, basis.nodes());
  const int deg = basis.degree();
  for (int ey = 0; ey < ny; ++ey)
    for (int ex = 0; ex < nx; ++ex) {
      const int e = ey * nx + ex;
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i) {
          m.xc_[static_cast<std::size_t>(e) * nn + j * np + i] =
              tx[static_cast<std::size_t>(ex) * deg + i];
          m.yc_[static_cast<std::size_t>(e) * nn + j * np + i] =
              ty[static_cast<std::size_t>(ey) * deg + j];
        }
    }
  build_faces(m, nx, ny, px, py, m.faces_, m.elem_face_);
  return m;
}

CurvilinearMesh make_warped_mesh(int nx, int ny, double amplitude,
                                 const Rect& domain, const Basis1D& basis,
                                 bool periodic_x, bool periodic_y) {
  CurvilinearMesh m =
      make_cartesian_mesh(nx, ny, domain, basis, periodic_x, periodic_y);
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < m.xc_.size(); ++k) {
    const double x = m.xc_[k], y = m.yc_[k];
    const double d = amplitude * std::sin(pi * x) * std::sin(pi * y);
    m.xc_[k] = x + d;
    m.yc_[k] = y + d;
  }
  compute_metrics(m, basis); // validates J > 0, throws GeometryError if folded
  return m;
}

void write_field_dump(std::ostream& os, const CurvilinearMesh& mesh,
                      const NodalField& field,
                      const std::vector<std::string>& comp_names) {
  os << "# e i j x y";
  for (const auto& n : comp_names) os << ' ' << n;
  os << '\n';
  const int np = mesh.npts1d();
  char buf[64];
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const int node = mesh.node_index(i, j);
        os << e << ' ' << i << ' ' << j;
        std::snprintf(buf, sizeof buf, " %.16e %.16e", mesh.x(e, node),
                      mesh.y(e, node));
        os << buf;
        const double* u = field.at(e, node);
        for (int c = 0; c < field.ncomp; ++c) {
          std::snprintf(buf, sizeof buf, " %.16e", u[c]);
          os << buf;
        }
        os << '\n';
      }
}

} // namespace lwfr
