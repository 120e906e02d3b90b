#include <doctest.h>

#include <algorithm>
#include <set>

#include "atlastile/error.hpp"
#include "atlastile/geometry.hpp"
#include "oracles.hpp"

using namespace atlastile;

namespace {

const Lattice kLattices[] = {Lattice::Square, Lattice::Cubic, Lattice::Triangular};
const ShapeKind kShapes[] = {ShapeKind::Square2D, ShapeKind::Cube3D, ShapeKind::TriangleUp, ShapeKind::TriangleDown};

std::vector<Cell> neighbourhood(Lattice lattice, int r) {
  std::vector<Cell> out;
  const int zr = lattice == Lattice::Cubic ? r : 0;
  for (int z = -zr; z <= zr; ++z)
    for (int y = -r; y <= r; ++y)
      for (int x = -r; x <= r; ++x) {
        out.push_back({{x, y, z}, false});
        if (lattice == Lattice::Triangular) out.push_back({{x, y, z}, true});
      }
  return out;
}

}  // namespace

TEST_CASE("point groups have the expected orders") {
  CHECK(point_group(ShapeKind::Square2D).order() == 8);
  CHECK(point_group(ShapeKind::Cube3D).order() == 48);
  CHECK(point_group(ShapeKind::TriangleUp).order() == 6);
  CHECK(point_group(ShapeKind::TriangleDown).order() == 6);
  CHECK(lattice_group(Lattice::Triangular).size() == 12);
  for (ShapeKind s : kShapes) CHECK(point_group(s).elements.front().is_identity());
}

TEST_CASE("element codes") {
  CHECK(point_group(ShapeKind::Square2D).codes() == std::vector<std::string>{"r0", "r1", "r2", "r3", "m0", "m1", "m2", "m3"});
  CHECK(point_group(ShapeKind::TriangleUp).codes() == std::vector<std::string>{"t0", "t1", "t2", "t3", "t4", "t5"});
  CHECK(element_code(lattice_group(Lattice::Cubic).front()) == "sXYZ:+++");
  CHECK(element_code(lattice_group(Lattice::Cubic).back()) == "sZYX:---");

  const PointOp f = parse_element_code(Lattice::Cubic, "sYXZ:-++");
  CHECK(f.apply({1, 2, 3}) == IVec{-2, 1, 3});
  CHECK(parse_element_code(Lattice::Triangular, "u") == triangle_swap());
  CHECK(element_code(triangle_swap()) == "ut0");

  for (Lattice l : kLattices) {
    std::set<std::string> seen;
    for (const PointOp& g : lattice_group(l)) {
      const std::string code = element_code(g);
      CHECK(seen.insert(code).second);
      CHECK(parse_element_code(l, code) == g);
    }
  }
  CHECK_THROWS_AS(parse_element_code(Lattice::Square, "r4"), Error);
  CHECK_THROWS_AS(parse_element_code(Lattice::Square, "t0"), Error);
}

TEST_CASE("invalid point operations are rejected") {
  CHECK_THROWS_AS(PointOp(Lattice::Square, {0, 0, 2}, {1, 1, 1}), Error);
  CHECK_THROWS_AS(PointOp(Lattice::Square, {0, 2, 1}, {1, 1, 1}), Error);
  CHECK_THROWS_AS(PointOp(Lattice::Triangular, {0, 1, 2}, {1, -1, 1}), Error);
  CHECK_THROWS_AS(compose(PointOp::identity(Lattice::Square), PointOp::identity(Lattice::Cubic)), Error);
}

TEST_CASE("group axioms hold exhaustively") {
  for (Lattice l : kLattices) {
    const auto& g = lattice_group(l);
    const PointOp id = PointOp::identity(l);
    std::set<int> all;
    for (const PointOp& a : g) all.insert(element_index(a));
    CHECK(all.size() == g.size());
    for (const PointOp& a : g) {
      CHECK(compose(id, a) == a);
      CHECK(compose(a, id) == a);
      CHECK(compose(a, inverse(a)) == id);
      CHECK(compose(inverse(a), a) == id);
      for (const PointOp& b : g) {
        const PointOp ab = compose(a, b);
        CHECK_NOTHROW(element_index(ab));
        // Matrix oracle: composition is the matrix product.
        CHECK(oracle::matrix(ab) == oracle::multiply(oracle::matrix(a), oracle::matrix(b)));
      }
    }
  }
  // Associativity over the largest group.
  const auto& g = lattice_group(Lattice::Cubic);
  bool assoc = true;
  for (const PointOp& a : g)
    for (const PointOp& b : g)
      for (const PointOp& c : g) assoc = assoc && compose(compose(a, b), c) == compose(a, compose(b, c));
  CHECK(assoc);
}

TEST_CASE("point subgroups are closed") {
  for (ShapeKind s : kShapes) {
    const PointGroup g = point_group(s);
    auto in = [&](const PointOp& f) { return std::find(g.elements.begin(), g.elements.end(), f) != g.elements.end(); };
    for (const PointOp& a : g.elements) {
      CHECK(in(inverse(a)));
      for (const PointOp& b : g.elements) CHECK(in(compose(a, b)));
    }
  }
}

TEST_CASE("square rotations compose as expected") {
  const PointOp r1 = parse_element_code(Lattice::Square, "r1");
  CHECK(compose(r1, r1) == parse_element_code(Lattice::Square, "r2"));
  CHECK(r1.apply({1, 0, 0}) == IVec{0, 1, 0});
  CHECK(parse_element_code(Lattice::Square, "m0").apply({1, 1, 0}) == IVec{1, -1, 0});
  CHECK(parse_element_code(Lattice::Square, "m1").apply({1, 2, 0}) == IVec{2, 1, 0});
  CHECK(parse_element_code(Lattice::Square, "m2").apply({1, 1, 0}) == IVec{-1, 1, 0});
  CHECK(parse_element_code(Lattice::Square, "m3").apply({1, 2, 0}) == IVec{-2, -1, 0});
}

TEST_CASE("isometry composition and inverse") {
  for (Lattice l : kLattices) {
    const int zt = l == Lattice::Cubic ? 1 : 0;
    for (const PointOp& a : lattice_group(l))
      for (const PointOp& b : lattice_group(l)) {
        const Isometry fa{a, {1, -2, zt}}, fb{b, {3, 1, -zt}};
        const Isometry ab = compose(fa, fb);
        for (const IVec& v : {IVec{0, 0, 0}, IVec{2, -1, zt}, IVec{-3, 4, 2 * zt}}) {
          CHECK(ab.apply(v) == fa.apply(fb.apply(v)));
          CHECK(compose(fa, inverse(fa)).apply(v) == v);
        }
      }
  }
}

TEST_CASE("apply_cell matches vertex arithmetic") {
  CHECK(apply_cell(Isometry::identity(Lattice::Square), {{3, 5, 0}, false}) == Cell{{3, 5, 0}, false});
  CHECK(apply_cell(Isometry::translation_by(Lattice::Square, {1, 0, 0}), {{0, 0, 0}, false}) == Cell{{1, 0, 0}, false});

  for (Lattice l : kLattices) {
    const int zt = l == Lattice::Cubic ? -1 : 0;
    for (const PointOp& g : lattice_group(l)) {
      for (const IVec& t : {IVec{0, 0, 0}, IVec{2, -1, zt}}) {
        const Isometry f{g, t};
        for (const Cell& c : neighbourhood(l, 1)) CHECK(apply_cell(f, c) == oracle::image_cell(f, c));
      }
    }
  }
}

TEST_CASE("apply_cell is a group action") {
  for (Lattice l : kLattices) {
    const auto& g = lattice_group(l);
    const auto cells = neighbourhood(l, 1);
    for (std::size_t i = 0; i < g.size(); i += 3)
      for (std::size_t j = 0; j < g.size(); j += 5) {
        const Isometry a{g[i], {1, 0, 0}}, b{g[j], {0, -1, 0}};
        for (const Cell& c : cells) CHECK(apply_cell(compose(a, b), c) == apply_cell(a, apply_cell(b, c)));
      }
  }
}

TEST_CASE("rotation by pi/3 sends the up triangle at the origin to an adjacent down triangle") {
  const Isometry rot{triangle_swap(), {}};
  const Cell up{{0, 0, 0}, false};
  const Cell img = apply_cell(rot, up);
  CHECK(img.down);
  CHECK(img == Cell{{-1, 0, 0}, true});
  CHECK(img == oracle::image_cell(rot, up));
  // The image shares the rotation centre (0,0) with the original.
  const auto vs = oracle::vertices(Lattice::Triangular, img);
  CHECK(std::find(vs.begin(), vs.end(), IVec{0, 0, 0}) != vs.end());
  // Six applications return to the start; fewer do not.
  Cell c = up;
  for (int k = 1; k <= 6; ++k) {
    c = apply_cell(rot, c);
    CHECK((c == up) == (k == 6));
  }
  CHECK(image_shape(triangle_swap(), ShapeKind::TriangleUp) == ShapeKind::TriangleDown);
}

TEST_CASE("facet_action matches the midpoint oracle") {
  for (ShapeKind s : kShapes) {
    for (const PointOp& g : lattice_group(lattice_of(s))) CHECK(facet_action(g, s) == oracle::facet_perm(g, s));
  }
  const PointOp r1 = parse_element_code(Lattice::Square, "r1");
  // N -> W, W -> S, S -> E, E -> N
  CHECK(facet_action(r1, ShapeKind::Square2D) == FacetPerm{3, 0, 1, 2});
  CHECK(facet_action(PointOp::identity(Lattice::Square), ShapeKind::Square2D) == FacetPerm{0, 1, 2, 3});
  const PointOp mx(Lattice::Cubic, {0, 1, 2}, {-1, 1, 1});
  CHECK(facet_action(mx, ShapeKind::Cube3D) == FacetPerm{1, 0, 2, 3, 4, 5});
}

TEST_CASE("facet_action is a homomorphism") {
  for (ShapeKind s : kShapes) {
    const auto& g = lattice_group(lattice_of(s));
    for (const PointOp& a : g)
      for (const PointOp& b : g) {
        const FacetPerm pb = facet_action(b, s);
        const FacetPerm pa = facet_action(a, image_shape(b, s));
        const FacetPerm pab = facet_action(compose(a, b), s);
        for (std::size_t k = 0; k < pb.size(); ++k) CHECK(pab[k] == pa[pb[k]]);
      }
  }
}

TEST_CASE("facet_neighbour agrees with shared vertices") {
  for (Lattice l : kLattices) {
    for (const Cell& c : neighbourhood(l, 1)) {
      const int n = facet_count(shape_at(l, c));
      for (int k = 0; k < n; ++k) {
        const FacetNeighbour nb = facet_neighbour(l, c, k);
        CHECK(oracle::facet_vertices(l, c, k) == oracle::facet_vertices(l, nb.cell, nb.facet));
        CHECK(facet_neighbour(l, nb.cell, nb.facet).cell == c);
      }
    }
  }
}

TEST_CASE("isometries preserve facet adjacency") {
  for (Lattice l : kLattices) {
    const auto cells = neighbourhood(l, 1);
    const auto adj = oracle::shared_facets(l, cells);
    for (const PointOp& g : lattice_group(l)) {
      const Isometry f{g, {1, 1, 0}};
      std::vector<Cell> img;
      for (const Cell& c : cells) img.push_back(apply_cell(f, c));
      const auto adj_img = oracle::shared_facets(l, img);
      CHECK(adj_img.size() == adj.size());
      // Same pairs of indices share a facet before and after.
      std::set<std::pair<int, int>> before, after;
      for (const auto& e : adj) before.emplace(e.a, e.b);
      for (const auto& e : adj_img) after.emplace(e.a, e.b);
      CHECK(before == after);
    }
  }
}

TEST_CASE("touching offsets") {
  CHECK(touching_offsets(ShapeKind::Square2D).size() == 8);
  CHECK(touching_offsets(ShapeKind::Cube3D).size() == 26);
  CHECK(touching_offsets(ShapeKind::TriangleUp).size() == 12);
  CHECK(touching_offsets(ShapeKind::TriangleDown).size() == 12);
  for (ShapeKind s : kShapes) {
    const Lattice l = lattice_of(s);
    const Cell o = origin_cell(s);
    const auto& offs = touching_offsets(s);
    for (int k = 0; k < facet_count(s); ++k) CHECK(offs[k] == facet_neighbour(l, o, k).cell);
    // Exactly the cells sharing at least one vertex with the origin cell.
    const auto mine = oracle::vertices(l, o);
    std::set<Cell> expect;
    for (const Cell& c : neighbourhood(l, 2)) {
      if (c == o) continue;
      for (const IVec& v : oracle::vertices(l, c))
        if (std::find(mine.begin(), mine.end(), v) != mine.end()) expect.insert(c);
    }
    CHECK(std::set<Cell>(offs.begin(), offs.end()) == expect);
  }
}
