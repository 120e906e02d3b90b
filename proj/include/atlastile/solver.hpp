#pragma once

// Backtracking search for valid patches over free or toroidal regions.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atlastile/reduction.hpp"
#include "atlastile/tileset.hpp"

namespace atlastile {

struct SolveConfig {
  // Facet rules over a tile set, or the implicit atlas of a reduced set.
  std::variant<TileSet, ReducedSet> rules;
  RegionSpec region;
  std::uint64_t seed = 0;
  std::uint64_t node_limit = 100'000'000;
  int parallel_width = 1;
};

enum class SolveStatus : std::uint8_t { Found, Exhausted, LimitReached };

std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Exhausted;
  std::optional<Patch> patch;  // set iff Found
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{};
};

// Cells are filled in scanline order; candidates are tried in canonical
// order. Found patches are re-verified by the tileset/atlas validators.
SolveResult solve(const SolveConfig& cfg);

// As solve, but the candidate order at every cell is shuffled by a stream
// seeded from cfg.seed.
SolveResult random_patch(const SolveConfig& cfg);

struct TorusVerdict {
  int k = 0;
  SolveStatus status = SolveStatus::Exhausted;
  std::uint64_t nodes = 0;
};

// k x k (x k for cubes) tori for k = 1 .. k_max.
std::vector<TorusVerdict> exhaust_torus(const TileSet& set, int k_max, std::uint64_t node_limit, int parallel_width = 1);
std::vector<TorusVerdict> exhaust_torus(const ReducedSet& red, int k_max, std::uint64_t node_limit, int parallel_width = 1);

// "k=1 NO, k=2 NO, ..." (YES for Found, LIMIT for LimitReached).
std::string format_verdicts(const std::vector<TorusVerdict>& v);

}  // namespace atlastile
