#pragma once

// Lattice cells, exact isometries and the finite point groups acting on the
// three supported tile shapes.
//
// Conventions (all integer arithmetic):
//   Square   cell (x,y)   = [x,x+1] x [y,y+1]; facets N,E,S,W.
//   Cubic    cell (x,y,z) = unit cube at that corner; facets X+,X-,Y+,Y-,Z+,Z-.
//   Triangular, axial basis e1 = (1,0), e2 = (1/2, sqrt(3)/2):
//     up   (i,j): vertices v0=(i,j),     v1=(i+1,j), v2=(i,j+1)
//     down (i,j): vertices v0=(i+1,j+1), v1=(i,j+1), v2=(i+1,j)
//     facet k is the edge opposite vertex k, so up facet k always meets a
//     down facet k.
//   Point operations on the triangular lattice act on cube coordinates
//   (a, b, -a-b) as signed permutations with a uniform sign; the positive
//   ones are D3 (they keep up/down), the negative ones swap up and down.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace atlastile {

enum class Lattice : std::uint8_t { Square, Cubic, Triangular };
enum class ShapeKind : std::uint8_t { Square2D, Cube3D, TriangleUp, TriangleDown };

int dimension(Lattice lattice);
Lattice lattice_of(ShapeKind shape);
int facet_count(ShapeKind shape);
std::string_view to_string(Lattice lattice);
std::string_view to_string(ShapeKind shape);

using IVec = std::array<int, 3>;

inline IVec operator+(const IVec& a, const IVec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline IVec operator-(const IVec& a, const IVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

struct Cell {
  IVec coords{};
  bool down = false;  // triangular lattice only

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

Cell translate(const Cell& cell, const IVec& by);
ShapeKind shape_at(Lattice lattice, const Cell& cell);

// Vertices of a cell in lattice coordinates, in the facet-defining order for
// triangles (facet k is opposite vertex k).
std::vector<IVec> cell_vertices(Lattice lattice, const Cell& cell);

// Signed permutation: (f(v))_i = sign[i] * v[axis[i]].
class PointOp {
 public:
  PointOp() = default;
  PointOp(Lattice lattice, std::array<std::int8_t, 3> axis, std::array<std::int8_t, 3> sign);

  static PointOp identity(Lattice lattice);

  Lattice lattice() const { return lattice_; }
  const std::array<std::int8_t, 3>& axis() const { return axis_; }
  const std::array<std::int8_t, 3>& sign() const { return sign_; }
  bool is_identity() const;

  // Linear action on a lattice vector (axial coordinates for triangles).
  IVec apply(const IVec& v) const;

  friend bool operator==(const PointOp&, const PointOp&) = default;

 private:
  Lattice lattice_ = Lattice::Square;
  std::array<std::int8_t, 3> axis_{0, 1, 2};
  std::array<std::int8_t, 3> sign_{1, 1, 1};
};

PointOp compose(const PointOp& a, const PointOp& b);  // apply b, then a
PointOp inverse(const PointOp& f);

struct Isometry {
  PointOp point;
  IVec translation{};

  static Isometry identity(Lattice lattice) { return {PointOp::identity(lattice), {}}; }
  static Isometry translation_by(Lattice lattice, const IVec& t) { return {PointOp::identity(lattice), t}; }

  IVec apply(const IVec& v) const { return point.apply(v) + translation; }

  friend bool operator==(const Isometry&, const Isometry&) = default;
};

Isometry compose(const Isometry& a, const Isometry& b);  // apply b, then a
Isometry inverse(const Isometry& f);

Cell apply_cell(const Isometry& f, const Cell& cell);

// Shape of f(P) for a prototile of shape `shape`.
ShapeKind image_shape(const PointOp& f, ShapeKind shape);

// Every point operation the lattice admits, in canonical order:
//   Square:     r0 r1 r2 r3 m0 m1 m2 m3                         (8)
//   Cubic:      sXYZ:+++ ... sZYX:---                           (48)
//   Triangular: t0 .. t5 (D3), then ut0 .. ut5 (= u o tk)       (12)
const std::vector<PointOp>& lattice_group(Lattice lattice);

// Position of f in lattice_group(f.lattice()).
int element_index(const PointOp& f);

struct PointGroup {
  Lattice lattice = Lattice::Square;
  std::vector<PointOp> elements;  // identity first

  std::size_t order() const { return elements.size(); }
  std::vector<std::string> codes() const;
};

// Stabilizer of the shape's support modulo translation: D4, O_h, or D3.
PointGroup point_group(ShapeKind shape);

// The rot(pi/3) swap of up and down triangles.
const PointOp& triangle_swap();

std::string element_code(const PointOp& f);
PointOp parse_element_code(Lattice lattice, std::string_view code);

// perm[i] = facet index that facet i is carried to.
using FacetPerm = std::vector<int>;
FacetPerm facet_action(const PointOp& f, ShapeKind shape);
FacetPerm facet_action(const Isometry& f, ShapeKind shape);

struct FacetNeighbour {
  Cell cell;
  int facet = 0;  // facet of the neighbour that is shared
};

FacetNeighbour facet_neighbour(Lattice lattice, const Cell& cell, int facet);

// Offsets of every cell touching a cell of the given shape placed at the
// origin (origin cell is down for TriangleDown). Facet neighbours come first,
// in facet order; the remaining vertex/edge contacts follow in sorted order.
const std::vector<Cell>& touching_offsets(ShapeKind shape);

// Origin cell holding a shape (the down triangle at (0,0) for TriangleDown).
Cell origin_cell(ShapeKind shape);

}  // namespace atlastile
