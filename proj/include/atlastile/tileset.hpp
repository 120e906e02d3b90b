#pragma once

// Coloured prototiles, facet matching rules, patches and their validation.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atlastile/geometry.hpp"

namespace atlastile {

// Colour 0 is the uncoloured value.
using Colour = std::uint32_t;

enum class RuleKind : std::uint8_t { Identical, Table };

class FacetRule {
 public:
  FacetRule() = default;

  static FacetRule identical() { return {}; }
  // Pairs are closed under symmetry; (0,0) is always allowed.
  static FacetRule table(std::span<const std::pair<Colour, Colour>> pairs);

  RuleKind kind() const { return kind_; }
  // Normalised (min, max) pairs; empty for the identical rule.
  const std::set<std::pair<Colour, Colour>>& pairs() const { return pairs_; }

  bool allows(Colour a, Colour b) const;

  friend bool operator==(const FacetRule&, const FacetRule&) = default;

 private:
  RuleKind kind_ = RuleKind::Identical;
  std::set<std::pair<Colour, Colour>> pairs_;
};

inline bool rule_eval(const FacetRule& r, Colour a, Colour b) { return r.allows(a, b); }

struct Prototile {
  std::string id;
  ShapeKind shape = ShapeKind::Square2D;
  std::vector<Colour> facet_colours;  // canonical facet order

  friend bool operator==(const Prototile&, const Prototile&) = default;
};

enum class IsometryMode : std::uint8_t { TranslationsOnly, AllIsometries };

class TileSet {
 public:
  TileSet() = default;
  // Validates: unique ids, facet counts, rule colours drawn from the tiles.
  TileSet(std::string name, std::vector<Prototile> prototiles, FacetRule rule,
          IsometryMode isometries = IsometryMode::TranslationsOnly);

  const std::string& name() const { return name_; }
  const std::vector<Prototile>& prototiles() const { return prototiles_; }
  const Prototile& at(int index) const { return prototiles_.at(index); }
  int size() const { return static_cast<int>(prototiles_.size()); }
  const FacetRule& rule() const { return rule_; }
  IsometryMode isometries() const { return isometries_; }

  std::optional<int> index_of(std::string_view id) const;

  // True when every prototile lives on one lattice (required for patches).
  bool single_lattice() const;
  // Lattice of the prototiles; throws for mixed or empty sets.
  Lattice lattice() const;

  friend bool operator==(const TileSet&, const TileSet&) = default;

 private:
  std::string name_;
  std::vector<Prototile> prototiles_;
  FacetRule rule_;
  IsometryMode isometries_ = IsometryMode::TranslationsOnly;
};

struct Placement {
  Cell cell;
  int tile = 0;  // index into the tile set (or the reduced set's representatives)
  PointOp orientation;

  friend bool operator==(const Placement&, const Placement&) = default;
};

enum class Boundary : std::uint8_t { Free, Torus };

// Box of cells [origin, origin + extent). Triangular regions count rhombi:
// each (i, j) holds one up and one down cell.
struct RegionSpec {
  Lattice lattice = Lattice::Square;
  IVec extent{1, 1, 1};
  Boundary boundary = Boundary::Free;
  IVec origin{};

  static RegionSpec box(Lattice lattice, int width, int height, int depth = 1, Boundary b = Boundary::Free);

  bool contains(const Cell& cell) const;
  // Canonical representative of the cell (wrapping on a torus); nullopt when
  // the cell lies outside a free region.
  std::optional<Cell> resolve(const Cell& cell) const;
  // Scanline order: rows of x (up before down within a rhombus), then y, then z.
  std::vector<Cell> cells() const;
  std::size_t cell_count() const;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

class Patch {
 public:
  Patch() = default;
  explicit Patch(RegionSpec region);

  const RegionSpec& region() const { return region_; }
  const std::map<Cell, Placement>& placements() const { return placements_; }
  std::size_t size() const { return placements_.size(); }
  bool empty() const { return placements_.empty(); }
  const Placement* find(const Cell& cell) const;

  // Throws when the cell is outside a free region or already occupied.
  void place(const Placement& p);

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  RegionSpec region_;
  std::map<Cell, Placement> placements_;
};

// True when `orientation` may carry a prototile of `shape` into `cell`.
bool orientation_admissible(const TileSet& set, ShapeKind shape, const PointOp& orientation);

// Facet colours of a placed tile, read in the canonical facet order of the
// cell it occupies.
std::vector<Colour> effective_facets(const Placement& p, const TileSet& set);

struct Violation {
  Cell cell;
  int facet = 0;
  Cell other;
  int other_facet = 0;
  Colour colour = 0;
  Colour other_colour = 0;

  std::string describe() const;
};

struct PatchCheck {
  bool valid = true;
  std::optional<Violation> violation;

  explicit operator bool() const { return valid; }
};

PatchCheck patch_valid(const TileSet& set, const Patch& patch);

// Text formats.
TileSet parse_tileset(std::string_view text);
std::string serialize_tileset(const TileSet& set);
TileSet load_tileset(const std::string& path);

struct PatchVocabulary {
  std::string set_name;
  Lattice lattice = Lattice::Square;
  std::vector<std::string> tile_ids;
};

PatchVocabulary vocabulary(const TileSet& set);

Patch parse_patch(std::string_view text, const PatchVocabulary& vocab);
std::string serialize_patch(const Patch& patch, const PatchVocabulary& vocab);

std::string format_cell(Lattice lattice, const Cell& cell);

}  // namespace atlastile
