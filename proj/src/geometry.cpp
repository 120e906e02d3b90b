#include "atlastile/geometry.hpp"

#include <algorithm>
#include <map>

#include "atlastile/error.hpp"

namespace atlastile {

int dimension(Lattice lattice) { return lattice == Lattice::Cubic ? 3 : 2; }

Lattice lattice_of(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::Square2D: return Lattice::Square;
    case ShapeKind::Cube3D: return Lattice::Cubic;
    case ShapeKind::TriangleUp:
    case ShapeKind::TriangleDown: return Lattice::Triangular;
  }
  return Lattice::Square;
}

int facet_count(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::Square2D: return 4;
    case ShapeKind::Cube3D: return 6;
    case ShapeKind::TriangleUp:
    case ShapeKind::TriangleDown: return 3;
  }
  return 0;
}

std::string_view to_string(Lattice lattice) {
  switch (lattice) {
    case Lattice::Square: return "square2d";
    case Lattice::Cubic: return "cube3d";
    case Lattice::Triangular: return "tri2d";
  }
  return "?";
}

std::string_view to_string(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::Square2D: return "square";
    case ShapeKind::Cube3D: return "cube";
    case ShapeKind::TriangleUp: return "triangle-up";
    case ShapeKind::TriangleDown: return "triangle-down";
  }
  return "?";
}

Cell translate(const Cell& cell, const IVec& by) { return {cell.coords + by, cell.down}; }

ShapeKind shape_at(Lattice lattice, const Cell& cell) {
  switch (lattice) {
    case Lattice::Square: return ShapeKind::Square2D;
    case Lattice::Cubic: return ShapeKind::Cube3D;
    case Lattice::Triangular: return cell.down ? ShapeKind::TriangleDown : ShapeKind::TriangleUp;
  }
  return ShapeKind::Square2D;
}

std::vector<IVec> cell_vertices(Lattice lattice, const Cell& cell) {
  const IVec& c = cell.coords;
  std::vector<IVec> out;
  switch (lattice) {
    case Lattice::Square:
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) out.push_back({c[0] + dx, c[1] + dy, 0});
      break;
    case Lattice::Cubic:
      for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
          for (int dx = 0; dx < 2; ++dx) out.push_back({c[0] + dx, c[1] + dy, c[2] + dz});
      break;
    case Lattice::Triangular:
      if (!cell.down) {
        out = {{c[0], c[1], 0}, {c[0] + 1, c[1], 0}, {c[0], c[1] + 1, 0}};
      } else {
        out = {{c[0] + 1, c[1] + 1, 0}, {c[0], c[1] + 1, 0}, {c[0] + 1, c[1], 0}};
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// PointOp

PointOp::PointOp(Lattice lattice, std::array<std::int8_t, 3> axis, std::array<std::int8_t, 3> sign)
    : lattice_(lattice), axis_(axis), sign_(sign) {
  const int n = lattice == Lattice::Square ? 2 : 3;
  std::array<bool, 3> seen{};
  for (int i = 0; i < 3; ++i) {
    if (sign_[i] != 1 && sign_[i] != -1) throw Error("point operation: sign entries must be +1 or -1");
    if (axis_[i] < 0 || axis_[i] > 2 || seen[axis_[i]]) throw Error("point operation: axis entries must be a permutation");
    seen[axis_[i]] = true;
  }
  if (n == 2) {
    if (axis_[2] != 2 || sign_[2] != 1) throw Error("point operation: square lattice acts on x and y only");
  }
  if (lattice == Lattice::Triangular && !(sign_[0] == sign_[1] && sign_[1] == sign_[2])) {
    throw Error("point operation: triangular lattice operations need a uniform sign");
  }
}

PointOp PointOp::identity(Lattice lattice) { return PointOp(lattice, {0, 1, 2}, {1, 1, 1}); }

bool PointOp::is_identity() const {
  return axis_ == std::array<std::int8_t, 3>{0, 1, 2} && sign_ == std::array<std::int8_t, 3>{1, 1, 1};
}

IVec PointOp::apply(const IVec& v) const {
  if (lattice_ == Lattice::Triangular) {
    const IVec cube{v[0], v[1], -v[0] - v[1]};
    return {sign_[0] * cube[axis_[0]], sign_[1] * cube[axis_[1]], 0};
  }
  return {sign_[0] * v[axis_[0]], sign_[1] * v[axis_[1]], sign_[2] * v[axis_[2]]};
}

PointOp compose(const PointOp& a, const PointOp& b) {
  if (a.lattice() != b.lattice()) throw Error("compose: lattice mismatch");
  std::array<std::int8_t, 3> axis{}, sign{};
  for (int i = 0; i < 3; ++i) {
    axis[i] = b.axis()[a.axis()[i]];
    sign[i] = static_cast<std::int8_t>(a.sign()[i] * b.sign()[a.axis()[i]]);
  }
  return PointOp(a.lattice(), axis, sign);
}

PointOp inverse(const PointOp& f) {
  std::array<std::int8_t, 3> axis{}, sign{};
  for (int i = 0; i < 3; ++i) {
    axis[f.axis()[i]] = static_cast<std::int8_t>(i);
    sign[f.axis()[i]] = f.sign()[i];
  }
  return PointOp(f.lattice(), axis, sign);
}

Isometry compose(const Isometry& a, const Isometry& b) {
  return {compose(a.point, b.point), a.point.apply(b.translation) + a.translation};
}

Isometry inverse(const Isometry& f) {
  const PointOp inv = inverse(f.point);
  const IVec t = inv.apply(f.translation);
  return {inv, {-t[0], -t[1], -t[2]}};
}

Cell apply_cell(const Isometry& f, const Cell& cell) {
  const Lattice lattice = f.point.lattice();
  const IVec& c = cell.coords;
  const IVec& t = f.translation;
  if (lattice != Lattice::Triangular && cell.down) throw Error("apply_cell: up/down bit on a non-triangular cell");
  switch (lattice) {
    case Lattice::Square:
      if (c[2] != 0 || t[2] != 0) throw Error("apply_cell: square lattice cell with a z coordinate");
      [[fallthrough]];
    case Lattice::Cubic: {
      const int d = dimension(lattice);
      IVec doubled{};
      for (int k = 0; k < d; ++k) doubled[k] = 2 * c[k] + 1;
      const IVec w = f.point.apply(doubled);
      IVec out{};
      for (int k = 0; k < d; ++k) out[k] = (w[k] + 2 * t[k] - 1) / 2;
      return {out, false};
    }
    case Lattice::Triangular: {
      if (c[2] != 0 || t[2] != 0) throw Error("apply_cell: triangular lattice cell with a z coordinate");
      // Centroids, scaled by 3: up cells sit at 3c+(1,1), down cells at 3c+(2,2).
      const int o = cell.down ? 2 : 1;
      const IVec w = f.point.apply({3 * c[0] + o, 3 * c[1] + o, 0}) + IVec{3 * t[0], 3 * t[1], 0};
      const int m = ((w[0] % 3) + 3) % 3;
      const int off = m == 1 ? 1 : 2;
      return {{(w[0] - off) / 3, (w[1] - off) / 3, 0}, m == 2};
    }
  }
  return cell;
}

ShapeKind image_shape(const PointOp& f, ShapeKind shape) {
  if (f.lattice() != lattice_of(shape)) throw Error("image_shape: lattice mismatch");
  if (f.lattice() != Lattice::Triangular || f.sign()[0] > 0) return shape;
  return shape == ShapeKind::TriangleUp ? ShapeKind::TriangleDown : ShapeKind::TriangleUp;
}

// ---------------------------------------------------------------------------
// Groups and codes

namespace {

using Axis = std::array<std::int8_t, 3>;

int pack(const PointOp& f) {
  int key = 0;
  for (int i = 0; i < 3; ++i) key = key * 3 + f.axis()[i];
  for (int i = 0; i < 3; ++i) key = key * 2 + (f.sign()[i] < 0 ? 1 : 0);
  return key;  // < 27 * 8
}

struct GroupTable {
  std::vector<PointOp> elements;
  std::vector<std::string> codes;
  std::array<int, 27 * 8> index{};
};

GroupTable make_square() {
  GroupTable g;
  const auto add = [&](Axis axis, Axis sign, const char* code) {
    g.elements.emplace_back(Lattice::Square, axis, sign);
    g.codes.emplace_back(code);
  };
  add({0, 1, 2}, {1, 1, 1}, "r0");
  add({1, 0, 2}, {-1, 1, 1}, "r1");
  add({0, 1, 2}, {-1, -1, 1}, "r2");
  add({1, 0, 2}, {1, -1, 1}, "r3");
  add({0, 1, 2}, {1, -1, 1}, "m0");  // across the x-axis
  add({1, 0, 2}, {1, 1, 1}, "m1");   // main diagonal
  add({0, 1, 2}, {-1, 1, 1}, "m2");  // across the y-axis
  add({1, 0, 2}, {-1, -1, 1}, "m3"); // anti-diagonal
  return g;
}

GroupTable make_cubic() {
  GroupTable g;
  Axis perm{0, 1, 2};
  do {
    for (int s = 0; s < 8; ++s) {
      Axis sign{};
      std::string code = "s";
      for (int i = 0; i < 3; ++i) code += static_cast<char>('X' + perm[i]);
      code += ':';
      for (int i = 0; i < 3; ++i) {
        const bool neg = (s >> (2 - i)) & 1;
        sign[i] = neg ? -1 : 1;
        code += neg ? '-' : '+';
      }
      g.elements.emplace_back(Lattice::Cubic, perm, sign);
      g.codes.push_back(code);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return g;
}

const PointOp& swap_op() {
  static const PointOp op(Lattice::Triangular, {1, 2, 0}, {-1, -1, -1});
  return op;
}

GroupTable make_triangular() {
  GroupTable g;
  const std::array<Axis, 6> d3{Axis{0, 1, 2}, Axis{2, 0, 1}, Axis{1, 2, 0},
                               Axis{1, 0, 2}, Axis{0, 2, 1}, Axis{2, 1, 0}};
  for (int k = 0; k < 6; ++k) {
    g.elements.emplace_back(Lattice::Triangular, d3[k], Axis{1, 1, 1});
    g.codes.push_back("t" + std::to_string(k));
  }
  for (int k = 0; k < 6; ++k) {
    g.elements.push_back(compose(swap_op(), g.elements[k]));
    g.codes.push_back("ut" + std::to_string(k));
  }
  return g;
}

const GroupTable& table(Lattice lattice) {
  static const auto build = [](GroupTable g) {
    g.index.fill(-1);
    for (std::size_t i = 0; i < g.elements.size(); ++i) g.index[pack(g.elements[i])] = static_cast<int>(i);
    return g;
  };
  static const GroupTable square = build(make_square());
  static const GroupTable cubic = build(make_cubic());
  static const GroupTable triangular = build(make_triangular());
  switch (lattice) {
    case Lattice::Square: return square;
    case Lattice::Cubic: return cubic;
    case Lattice::Triangular: return triangular;
  }
  return square;
}

}  // namespace

const std::vector<PointOp>& lattice_group(Lattice lattice) { return table(lattice).elements; }

int element_index(const PointOp& f) {
  const int idx = table(f.lattice()).index[pack(f)];
  if (idx < 0) throw Error("element_index: operation does not preserve the lattice");
  return idx;
}

std::vector<std::string> PointGroup::codes() const {
  std::vector<std::string> out;
  out.reserve(elements.size());
  for (const PointOp& f : elements) out.push_back(element_code(f));
  return out;
}

PointGroup point_group(ShapeKind shape) {
  const Lattice lattice = lattice_of(shape);
  const auto& all = lattice_group(lattice);
  PointGroup g{lattice, {}};
  for (const PointOp& f : all) {
    if (image_shape(f, shape) == shape) g.elements.push_back(f);
  }
  return g;
}

const PointOp& triangle_swap() { return swap_op(); }

std::string element_code(const PointOp& f) { return table(f.lattice()).codes[element_index(f)]; }

PointOp parse_element_code(Lattice lattice, std::string_view code) {
  if (lattice == Lattice::Triangular && code == "u") return swap_op();
  const GroupTable& t = table(lattice);
  for (std::size_t i = 0; i < t.codes.size(); ++i) {
    if (t.codes[i] == code) return t.elements[i];
  }
  throw Error("unknown element code '" + std::string(code) + "' for lattice " + std::string(to_string(lattice)));
}

// ---------------------------------------------------------------------------
// Facets and neighbourhoods

namespace {

const std::vector<IVec>& facet_normals(Lattice lattice) {
  static const std::vector<IVec> square{{0, 1, 0}, {1, 0, 0}, {0, -1, 0}, {-1, 0, 0}};
  static const std::vector<IVec> cubic{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  return lattice == Lattice::Cubic ? cubic : square;
}

}  // namespace

FacetPerm facet_action(const PointOp& f, ShapeKind shape) {
  if (f.lattice() != lattice_of(shape)) throw Error("facet_action: operation and shape live on different lattices");
  const int n = facet_count(shape);
  FacetPerm perm(n, -1);
  if (f.lattice() == Lattice::Triangular) {
    const Cell src = origin_cell(shape);
    const Isometry iso{f, {}};
    const std::vector<IVec> from = cell_vertices(Lattice::Triangular, src);
    const std::vector<IVec> to = cell_vertices(Lattice::Triangular, apply_cell(iso, src));
    for (int k = 0; k < n; ++k) {
      const IVec img = iso.apply(from[k]);
      perm[k] = static_cast<int>(std::find(to.begin(), to.end(), img) - to.begin());
    }
    return perm;
  }
  const auto& normals = facet_normals(f.lattice());
  for (int k = 0; k < n; ++k) {
    const IVec img = f.apply(normals[k]);
    perm[k] = static_cast<int>(std::find(normals.begin(), normals.begin() + n, img) - normals.begin());
  }
  return perm;
}

FacetPerm facet_action(const Isometry& f, ShapeKind shape) { return facet_action(f.point, shape); }

FacetNeighbour facet_neighbour(Lattice lattice, const Cell& cell, int facet) {
  const IVec& c = cell.coords;
  switch (lattice) {
    case Lattice::Square: {
      static const std::array<IVec, 4> step{IVec{0, 1, 0}, IVec{1, 0, 0}, IVec{0, -1, 0}, IVec{-1, 0, 0}};
      return {{c + step.at(facet), false}, (facet + 2) % 4};
    }
    case Lattice::Cubic: {
      IVec d{};
      d.at(facet / 2) = facet % 2 == 0 ? 1 : -1;
      return {{c + d, false}, facet ^ 1};
    }
    case Lattice::Triangular: {
      static const std::array<IVec, 3> up_step{IVec{0, 0, 0}, IVec{-1, 0, 0}, IVec{0, -1, 0}};
      static const std::array<IVec, 3> down_step{IVec{0, 0, 0}, IVec{1, 0, 0}, IVec{0, 1, 0}};
      const IVec& d = cell.down ? down_step.at(facet) : up_step.at(facet);
      return {{c + d, !cell.down}, facet};
    }
  }
  return {cell, facet};
}

Cell origin_cell(ShapeKind shape) { return {{0, 0, 0}, shape == ShapeKind::TriangleDown}; }

namespace {

std::vector<Cell> compute_touching(ShapeKind shape) {
  const Lattice lattice = lattice_of(shape);
  const Cell origin = origin_cell(shape);
  const std::vector<IVec> mine = cell_vertices(lattice, origin);
  const int zr = lattice == Lattice::Cubic ? 2 : 0;

  std::vector<Cell> facet_first;
  for (int k = 0; k < facet_count(shape); ++k) facet_first.push_back(facet_neighbour(lattice, origin, k).cell);

  std::vector<Cell> rest;
  for (int z = -zr; z <= zr; ++z)
    for (int y = -2; y <= 2; ++y)
      for (int x = -2; x <= 2; ++x)
        for (int d = 0; d < (lattice == Lattice::Triangular ? 2 : 1); ++d) {
          const Cell cand{{x, y, z}, d == 1};
          if (cand == origin) continue;
          if (std::find(facet_first.begin(), facet_first.end(), cand) != facet_first.end()) continue;
          const auto theirs = cell_vertices(lattice, cand);
          const bool touches = std::any_of(theirs.begin(), theirs.end(), [&](const IVec& v) {
            return std::find(mine.begin(), mine.end(), v) != mine.end();
          });
          if (touches) rest.push_back(cand);
        }
  std::sort(rest.begin(), rest.end());
  facet_first.insert(facet_first.end(), rest.begin(), rest.end());
  return facet_first;
}

}  // namespace

const std::vector<Cell>& touching_offsets(ShapeKind shape) {
  static const std::map<ShapeKind, std::vector<Cell>> cache = [] {
    std::map<ShapeKind, std::vector<Cell>> m;
    for (ShapeKind s : {ShapeKind::Square2D, ShapeKind::Cube3D, ShapeKind::TriangleUp, ShapeKind::TriangleDown}) {
      m.emplace(s, compute_touching(s));
    }
    return m;
  }();
  return cache.at(shape);
}

}  // namespace atlastile
