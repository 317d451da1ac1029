#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "lwfr/basis.hpp"

namespace lwfr {

struct Rect {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  double dx(int nx) const { return (xmax - xmin) / nx; }
  double dy(int ny) const { return (ymax - ymin) / ny; }
};

/// Domain sides, used as boundary tags of the structured rectangle meshes.
enum class Side : int { Left = 0, Right = 1, Bottom = 2, Top = 3 };

/// A mesh face: either interior (two adjacent element slots) or boundary
/// (one element slot plus a tag). `dir` is the reference direction of the
/// face normal (0: xi, 1: eta). `elem_minus` sits on the -xi^dir side of the
/// face, `elem_plus` on the +xi^dir side; -1 marks the missing side of a
/// boundary face. Periodic connectivity appears as ordinary interior faces.
struct Face {
  int dir = 0;
  int elem_minus = -1;
  int elem_plus = -1;
  int boundary_side = -1; // Side index for boundary faces, -1 interior
  bool interior() const { return boundary_side < 0; }
  int inner_elem() const { return elem_minus >= 0 ? elem_minus : elem_plus; }
  /// true if the single element of a boundary face is the minus-side slot
  bool inner_is_minus() const { return elem_minus >= 0; }
};

/// Identifies one side of one element: direction and L/R side in that
/// direction. side L has reference normal -e_dir, side R has +e_dir.
struct FaceId {
  int elem;
  int dir;  // 0 or 1
  int side; // 0 = L, 1 = R
};

/// Curvilinear quadrilateral mesh: per-element nodal coordinates at the
/// (N+1)^2 tensor GLL points, plus face connectivity. Shared faces carry
/// bit-identical physical coordinates at matched points (node tables are
/// global). Immutable after construction.
class CurvilinearMesh {
public:
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int degree() const { return degree_; }
  int npts1d() const { return degree_ + 1; }
  int n_elements() const { return nx_ * ny_; }
  int nodes_per_elem() const { return (degree_ + 1) * (degree_ + 1); }
  const Rect& domain() const { return domain_; }
  bool periodic_x() const { return periodic_x_; }
  bool periodic_y() const { return periodic_y_; }

  /// node (i,j) of element e; i runs along xi, j along eta
  int node_index(int i, int j) const { return j * (degree_ + 1) + i; }
  double x(int e, int node) const { return xc_[e * nodes_per_elem() + node]; }
  double y(int e, int node) const { return yc_[e * nodes_per_elem() + node]; }
  const std::vector<double>& xcoords() const { return xc_; }
  const std::vector<double>& ycoords() const { return yc_; }

  const std::vector<Face>& faces() const { return faces_; }
  /// face index adjacent to element e in (dir, side); side 0 = L, 1 = R
  int elem_face(int e, int dir, int side) const {
    return elem_face_[4 * e + 2 * dir + side];
  }

  friend CurvilinearMesh make_cartesian_mesh(int, int, const Rect&,
                                             const Basis1D&, bool, bool);
  friend CurvilinearMesh make_warped_mesh(int, int, double, const Rect&,
                                          const Basis1D&, bool, bool);

private:
  int nx_ = 0, ny_ = 0, degree_ = 0;
  Rect domain_;
  bool periodic_x_ = false, periodic_y_ = false;
  std::vector<double> xc_, yc_; // ne * nn nodal coordinates
  std::vector<Face> faces_;
  std::vector<int> elem_face_; // ne * 4
};

/// Uniform tensor mesh of nx*ny elements over the rectangle. Every element's
/// Jacobian is the constant dx*dy/4.
CurvilinearMesh make_cartesian_mesh(int nx, int ny, const Rect& domain,
                                    const Basis1D& basis,
                                    bool periodic_x = true,
                                    bool periodic_y = true);

/// Cartesian mesh warped by (x,y) += amplitude * sin(pi x) sin(pi y) in both
/// coordinates, sampled at the mapped GLL points so the reference map is the
/// degree-N interpolant. Throws GeometryError when the map folds (J <= 0).
CurvilinearMesh make_warped_mesh(int nx, int ny, double amplitude,
                                 const Rect& domain, const Basis1D& basis,
                                 bool periodic_x = true,
                                 bool periodic_y = true);

class NodalField;

/// Plain-text field dump: one row `e i j x y <state components...>` per
/// solution point, header line prefixed '#'.
void write_field_dump(std::ostream& os, const CurvilinearMesh& mesh,
                      const NodalField& field,
                      const std::vector<std::string>& comp_names);

} // namespace lwfr
