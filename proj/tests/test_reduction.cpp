#include <doctest.h>

#include <random>
#include <set>

#include "atlastile/error.hpp"
#include "atlastile/reduction.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace atlastile;

namespace {

std::string data(const char* name) { return std::string(ATLASTILE_DATA_DIR) + "/" + name; }

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

TEST_CASE("translation classes of the bundled sets") {
  const auto culik = partition_translation(load_tileset(data("culik13.tiles")));
  REQUIRE(culik.size() == 1);
  CHECK(culik[0].members.size() == 13);
  const auto cubes = partition_translation(load_tileset(data("cubes21.tiles")));
  REQUIRE(cubes.size() == 1);
  CHECK(cubes[0].members.size() == 21);
  const auto tri = partition_translation(load_tileset(data("triangles6.tiles")));
  REQUIRE(tri.size() == 2);
  CHECK(tri[0].members.size() == 3);
  CHECK(tri[1].members.size() == 3);
  CHECK(tri[0].shape != tri[1].shape);
}

TEST_CASE("isometry classes") {
  const TileSet tri = load_tileset(data("triangles6.tiles"));
  const auto iso = partition_isometry(tri);
  REQUIRE(iso.size() == 1);
  CHECK(iso[0].translation_classes.size() == 2);
  CHECK(iso[0].representative == 0);  // tie on size: lowest id
  REQUIRE(iso[0].alpha.size() == 1);
  const PointOp alpha = iso[0].alpha.at(1);
  CHECK(alpha == triangle_swap());
  // Vertex check: alpha carries the down support onto an up support.
  const auto tclasses = partition_translation(tri);
  const Cell src = origin_cell(tclasses[1].shape);
  CHECK_FALSE(oracle::image_cell(Isometry{alpha, {}}, src).down);

  const auto culik = partition_isometry(load_tileset(data("culik13.tiles")));
  REQUIRE(culik.size() == 1);
  CHECK(culik[0].translation_classes.size() == 1);
  CHECK(culik[0].alpha.empty());

  // 2 up + 5 down: the larger down class represents.
  std::vector<std::pair<ShapeKind, std::vector<Colour>>> tiles;
  for (int i = 0; i < 2; ++i) tiles.push_back({ShapeKind::TriangleUp, {1, 1, Colour(i)}});
  for (int i = 0; i < 5; ++i) tiles.push_back({ShapeKind::TriangleDown, {1, 1, Colour(i)}});
  const auto mixed = partition_isometry(synthetic::shapes(tiles));
  REQUIRE(mixed.size() == 1);
  const auto mt = partition_translation(synthetic::shapes(tiles));
  CHECK(mt[mixed[0].representative].shape == ShapeKind::TriangleDown);
}

TEST_CASE("class groups") {
  CHECK(class_group({0, ShapeKind::Square2D, {0}, {"a"}}).order() == 8);
  CHECK(class_group({0, ShapeKind::Cube3D, {0}, {"a"}}).order() == 48);
  CHECK(class_group({0, ShapeKind::TriangleUp, {0}, {"a"}}).order() == 6);
}

TEST_CASE("build_encoding on the 13 Wang squares") {
  const auto c = partition_translation(load_tileset(data("culik13.tiles")))[0];
  const ClassEncoding e = build_encoding(c);
  CHECK(e.k == 2);
  const auto codes = point_group(ShapeKind::Square2D).codes();
  for (int j = 0; j < 13; ++j) {
    CHECK(e.assignment[j].first == (j < 8 ? 0 : 1));
    CHECK(element_code(e.assignment[j].second) == codes[j % 8]);
  }
  CHECK(element_code(e.assignment[12].second) == "m0");
}

TEST_CASE("build_encoding on cubes and singletons") {
  const auto c = partition_translation(load_tileset(data("cubes21.tiles")))[0];
  const ClassEncoding e = build_encoding(c);
  CHECK(e.k == 1);
  std::set<int> elements;
  for (const auto& [slot, g] : e.assignment) {
    CHECK(slot == 0);
    elements.insert(element_index(g));
  }
  CHECK(elements.size() == 21);

  const ClassEncoding one = build_encoding({0, ShapeKind::Square2D, {0}, {"A"}});
  CHECK(one.k == 1);
  CHECK(one.assignment[0].second.is_identity());
}

TEST_CASE("reduced counts of the bundled sets") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const TileSet cubes = load_tileset(data("cubes21.tiles"));
  const TileSet tri = load_tileset(data("triangles6.tiles"));
  CHECK(reduce(culik, ReductionMode::C1).size() == 2);
  CHECK(reduce(culik, ReductionMode::C2).size() == 2);
  CHECK(reduce(cubes, ReductionMode::C1).size() == 1);
  CHECK(reduce(tri, ReductionMode::C1).size() == 2);
  CHECK(reduce(tri, ReductionMode::C2).size() == 1);
  CHECK(reduced_cardinality(culik, ReductionMode::C1) == 2);
  CHECK(reduced_cardinality(cubes, ReductionMode::C1) == 1);
  CHECK(reduced_cardinality(tri, ReductionMode::C2) == 1);
}

TEST_CASE("reduce C2 on triangles stores alpha o g for the second class") {
  const TileSet tri = load_tileset(data("triangles6.tiles"));
  const ReducedSet red = reduce(tri, ReductionMode::C2);
  const auto d3 = point_group(ShapeKind::TriangleUp).elements;
  for (int j = 0; j < 3; ++j) {
    CHECK(red.forward(j).element == d3[j]);
    CHECK(red.forward(3 + j).element == compose(triangle_swap(), d3[j]));
    CHECK(red.forward(3 + j).rep == 0);
  }
}

TEST_CASE("Q9 encodes as (X1, r0)") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const ReducedSet red = reduce(culik, ReductionMode::C1);
  const EncodedPair e = red.forward(*culik.index_of("Q9"));
  CHECK(red.representatives()[e.rep].id == "X1");
  CHECK(e.element.is_identity());
  CHECK(red.representatives()[1].origin == "Q2");
  // Only five pairs on X1 are used.
  int used = 0;
  for (const PointOp& g : lattice_group(Lattice::Square)) used += red.inverse(1, g).has_value();
  CHECK(used == 5);
  CHECK_FALSE(red.inverse(1, parse_element_code(Lattice::Square, "m3")).has_value());
}

TEST_CASE("mixed-shape cardinality") {
  std::vector<std::pair<ShapeKind, std::vector<Colour>>> tiles;
  for (int i = 0; i < 9; ++i) tiles.push_back({ShapeKind::Square2D, {Colour(i), 0, 0, 0}});
  for (int i = 0; i < 3; ++i) tiles.push_back({ShapeKind::Cube3D, {Colour(i), 0, 0, 0, 0, 0}});
  const TileSet s = synthetic::shapes(tiles);
  CHECK(reduced_cardinality(s, ReductionMode::C1) == 3);
  CHECK(reduce(s, ReductionMode::C1).size() == 3);
}

TEST_CASE("encoding is injective and invertible") {
  std::mt19937_64 rng(19);
  const std::vector<ShapeKind> kinds{ShapeKind::Square2D, ShapeKind::Cube3D, ShapeKind::TriangleUp, ShapeKind::TriangleDown};
  for (int i = 0; i < 60; ++i) {
    std::vector<ShapeKind> pick;
    for (ShapeKind k : kinds)
      if (rng() % 2) pick.push_back(k);
    if (pick.empty()) pick.push_back(ShapeKind::Square2D);
    const TileSet s = synthetic::random_mixed(rng, pick, 1, 60);
    for (ReductionMode m : {ReductionMode::C1, ReductionMode::C2}) {
      const ReducedSet red = reduce(s, m);
      std::set<std::pair<int, int>> pairs;
      for (int t = 0; t < s.size(); ++t) {
        const EncodedPair& e = red.forward(t);
        CHECK(pairs.emplace(e.rep, element_index(e.element)).second);
        CHECK(red.inverse(e.rep, e.element) == t);
        CHECK(image_shape(e.element, red.representatives()[e.rep].shape) == s.at(t).shape);
      }
      CHECK(red.size() <= s.size());
      CHECK(red.size() == reduced_cardinality(s, m));
      int formula = 0;
      for (const auto& c : partition_translation(s)) formula += ceil_div(static_cast<int>(c.members.size()), static_cast<int>(point_group(c.shape).order()));
      if (m == ReductionMode::C1) CHECK(red.size() == formula);
    }
  }
}

TEST_CASE("reduction shrinks the bundled sets") {
  for (const char* f : {"culik13.tiles", "cubes21.tiles", "triangles6.tiles"}) {
    const TileSet s = load_tileset(data(f));
    CHECK(reduce(s, ReductionMode::C1).size() < s.size());
  }
}

TEST_CASE("reduce rejects sets already placed by all isometries") {
  const TileSet s = synthetic::squares({{1, 1, 1, 1}}, FacetRule::identical(), IsometryMode::AllIsometries);
  CHECK_THROWS_AS(reduce(s, ReductionMode::C1), Error);
}

TEST_CASE("colliding pairs are reported") {
  const TileSet s = synthetic::squares({{1, 1, 1, 1}, {2, 2, 2, 2}});
  const PointOp id = PointOp::identity(Lattice::Square);
  CHECK_THROWS_WITH_AS(ReducedSet(s, ReductionMode::C2, {{"X0", ShapeKind::Square2D, "T0"}}, {{0, id}, {0, id}}),
                       doctest::Contains("collision"), Error);
}

TEST_CASE("reduced set files") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const ReducedSet red = reduce(culik, ReductionMode::C1);
  const std::string text = serialize_reduced(red);
  CHECK(text.rfind("reduced culik13\nmode c1\nrep X0 square Q1\nrep X1 square Q2\nQ1 -> X0 r0\nQ2 -> X0 r1\n", 0) == 0);
  CHECK(text.find("Q13 -> X1 m0\n") != std::string::npos);
  CHECK(parse_reduced(text, culik) == red);
  CHECK(serialize_reduced(parse_reduced(text, culik)) == text);

  for (const char* f : {"cubes21.tiles", "triangles6.tiles"}) {
    const TileSet s = load_tileset(data(f));
    for (ReductionMode m : {ReductionMode::C1, ReductionMode::C2}) {
      const ReducedSet r = reduce(s, m);
      CHECK(parse_reduced(serialize_reduced(r), s) == r);
    }
  }
  CHECK_THROWS_AS(parse_reduced("reduced culik13\nmode c1\nrep X0 square Q1\nQ1 -> X0 r0\n", culik), ParseError);
  CHECK_THROWS_AS(parse_reduced("reduced culik13\nmode c3\n", culik), ParseError);
}

TEST_CASE("decorations have trivial stabilizers") {
  for (ShapeKind s : {ShapeKind::Square2D, ShapeKind::Cube3D, ShapeKind::TriangleUp, ShapeKind::TriangleDown}) {
    const auto stab = decoration_stabilizer(s);
    REQUIRE(stab.size() == 1);
    CHECK(stab[0].is_identity());
  }
}
