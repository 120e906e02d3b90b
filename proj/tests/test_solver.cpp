#include <doctest.h>

#include <random>

#include "atlastile/atlas.hpp"
#include "atlastile/error.hpp"
#include "atlastile/solver.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace atlastile;

namespace {

std::string data(const char* name) { return std::string(ATLASTILE_DATA_DIR) + "/" + name; }

SolveConfig config(const TileSet& set, RegionSpec region, std::uint64_t seed = 0, std::uint64_t limit = 100'000'000) {
  return SolveConfig{set, region, seed, limit};
}

}  // namespace

TEST_CASE("uniform tile fills any region") {
  const TileSet one = synthetic::squares({{1, 1, 1, 1}});
  for (Boundary b : {Boundary::Free, Boundary::Torus}) {
    const SolveResult r = solve(config(one, RegionSpec::box(Lattice::Square, 4, 3, 1, b)));
    REQUIRE(r.status == SolveStatus::Found);
    CHECK(r.patch->size() == 12);
    CHECK(r.nodes_explored == 12);
  }
  const auto v = exhaust_torus(one, 3, 1000);
  CHECK(format_verdicts(v) == "k=1 YES, k=2 YES, k=3 YES");
}

TEST_CASE("mismatched pair tiles nothing wider than one cell") {
  // E and W disagree on both tiles, so no horizontal neighbour fits.
  const TileSet s = synthetic::squares({{1, 2, 1, 3}, {1, 4, 1, 5}});
  CHECK(solve(config(s, RegionSpec::box(Lattice::Square, 1, 3))).status == SolveStatus::Found);
  const SolveResult r = solve(config(s, RegionSpec::box(Lattice::Square, 2, 1)));
  CHECK(r.status == SolveStatus::Exhausted);
  CHECK(r.nodes_explored == 2);
  CHECK(format_verdicts(exhaust_torus(s, 2, 1000)) == "k=1 NO, k=2 NO");
}

TEST_CASE("alternating pair needs an even torus") {
  const TileSet s = synthetic::squares({{1, 2, 1, 3}, {1, 3, 1, 2}});
  CHECK(format_verdicts(exhaust_torus(s, 4, 1000)) == "k=1 NO, k=2 YES, k=3 NO, k=4 YES");
}

TEST_CASE("Culik set tiles an 8x8 square") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const SolveResult r = solve(config(culik, RegionSpec::box(Lattice::Square, 8, 8)));
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(patch_valid(culik, *r.patch).valid);
  CHECK(oracle::patch_ok(culik, *r.patch));
  CHECK(r.nodes_explored >= 64);
}

TEST_CASE("solver output agrees with the pairwise oracle") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    const Lattice lat = round % 3 == 0 ? Lattice::Square : round % 3 == 1 ? Lattice::Triangular : Lattice::Cubic;
    const TileSet s = synthetic::random_set(rng, lat, 4, 3);
    const Boundary b = round % 2 ? Boundary::Torus : Boundary::Free;
    const RegionSpec region = RegionSpec::box(lat, 2, 2, lat == Lattice::Cubic ? 2 : 1, b);
    const SolveResult r = random_patch(config(s, region, round));
    if (r.status == SolveStatus::Found) {
      CHECK(oracle::patch_ok(s, *r.patch));
      CHECK(r.patch->size() == region.cell_count());
    }
  }
}

TEST_CASE("seeded runs are reproducible") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const RegionSpec region = RegionSpec::box(Lattice::Square, 6, 6);
  const SolveResult a = random_patch(config(culik, region, 42));
  const SolveResult b = random_patch(config(culik, region, 42));
  REQUIRE(a.status == SolveStatus::Found);
  CHECK(a.patch == b.patch);
  CHECK(a.nodes_explored == b.nodes_explored);
  bool differs = false;
  for (std::uint64_t seed = 1; seed < 8 && !differs; ++seed) differs = random_patch(config(culik, region, seed)).patch != a.patch;
  CHECK(differs);
  const SolveResult c = solve(config(culik, region, 1));
  const SolveResult d = solve(config(culik, region, 2));
  CHECK(c.patch == d.patch);  // unshuffled search ignores the seed
}

TEST_CASE("node limit") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const SolveResult r = solve(config(culik, RegionSpec::box(Lattice::Square, 8, 8), 0, 10));
  CHECK(r.status == SolveStatus::LimitReached);
  CHECK(r.nodes_explored == 10);
  CHECK_FALSE(r.patch.has_value());
  CHECK(format_verdicts({{1, SolveStatus::LimitReached, 10}}) == "k=1 LIMIT");
  CHECK_THROWS_AS(solve(config(culik, RegionSpec::box(Lattice::Square, 2, 2), 0, 0)), Error);
}

TEST_CASE("parallel search agrees with sequential verdicts") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  SolveConfig cfg = config(culik, RegionSpec::box(Lattice::Square, 6, 6));
  cfg.parallel_width = 2;
  const SolveResult r = solve(cfg);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(patch_valid(culik, *r.patch).valid);
  const auto seq = exhaust_torus(culik, 3, 10'000'000);
  const auto par = exhaust_torus(culik, 3, 10'000'000, 3);
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(seq[i].status == par[i].status);
  CHECK(format_verdicts(seq) == "k=1 NO, k=2 NO, k=3 NO");
}

TEST_CASE("atlas-mode search") {
  const TileSet culik = load_tileset(data("culik13.tiles"));
  const ReducedSet red = reduce(culik, ReductionMode::C1);
  const SolveResult r = solve(SolveConfig{red, RegionSpec::box(Lattice::Square, 6, 6)});
  REQUIRE(r.status == SolveStatus::Found);
  const Patch decoded = decode_patch(red, *r.patch);
  CHECK(patch_valid(culik, decoded).valid);
  // Canonical orders line up, so both searches visit the same tree.
  const SolveResult direct = solve(config(culik, RegionSpec::box(Lattice::Square, 6, 6)));
  CHECK(encode_patch(red, *direct.patch) == *r.patch);
  CHECK(direct.nodes_explored == r.nodes_explored);

  const auto a = exhaust_torus(red, 3, 10'000'000);
  CHECK(format_verdicts(a) == "k=1 NO, k=2 NO, k=3 NO");
}

TEST_CASE("triangular and cubic sets") {
  const TileSet tri = load_tileset(data("triangles6.tiles"));
  const SolveResult t = solve(config(tri, RegionSpec::box(Lattice::Triangular, 3, 3, 1, Boundary::Torus)));
  REQUIRE(t.status == SolveStatus::Found);
  CHECK(oracle::patch_ok(tri, *t.patch));
  const ReducedSet tred = reduce(tri, ReductionMode::C2);
  const SolveResult tx = solve(SolveConfig{tred, RegionSpec::box(Lattice::Triangular, 3, 3, 1, Boundary::Torus)});
  CHECK(tx.status == SolveStatus::Found);

  const TileSet cubes = load_tileset(data("cubes21.tiles"));
  const SolveResult c = random_patch(config(cubes, RegionSpec::box(Lattice::Cubic, 3, 3, 2), 9));
  REQUIRE(c.status == SolveStatus::Found);
  CHECK(oracle::patch_ok(cubes, *c.patch));
}

TEST_CASE("solver rejects malformed configurations") {
  const TileSet one = synthetic::squares({{1, 1, 1, 1}});
  CHECK_THROWS_AS(solve(config(one, RegionSpec::box(Lattice::Triangular, 2, 2))), Error);
  SolveConfig cfg = config(one, RegionSpec::box(Lattice::Square, 2, 2));
  cfg.parallel_width = 0;
  CHECK_THROWS_AS(solve(cfg), Error);
}
