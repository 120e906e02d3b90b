#pragma once

// 1-coronas, the atlas derived from a reduction, and the local maps between
// patches of original and reduced prototiles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atlastile/reduction.hpp"
#include "atlastile/tileset.hpp"

namespace atlastile {

// A placement and every placement touching it, translated so the centre sits
// on origin_cell(). neighbours[i] occupies touching_offsets(centre shape)[i].
// Tile indices refer to whichever set the corona was built over.
struct Corona {
  Placement center;
  std::vector<Placement> neighbours;

  ShapeKind center_shape() const { return shape_at(center.orientation.lattice(), center.cell); }

  friend bool operator==(const Corona&, const Corona&) = default;
};

inline constexpr std::uint64_t kDefaultCoronaCap = 10'000'000;

// Every placement a tile set allows in a cell of the given shape, ordered by
// tile index and then by canonical element order.
std::vector<Placement> placement_options(const TileSet& set, ShapeKind cell_shape);

// All valid coronas around (center_tile, orientation); facet neighbours are
// assigned first, every later cell is filtered against the cells already
// assigned. Throws CapExceeded past `cap`.
std::vector<Corona> enumerate_coronas(const TileSet& set, int center_tile, const PointOp& orientation,
                                      std::uint64_t cap = kDefaultCoronaCap);

// Corona of the placement at `cell`, or nullopt when a touching cell is empty
// or falls outside a free region.
std::optional<Corona> corona_at(const Patch& patch, const Cell& cell);

class Atlas {
 public:
  Atlas() = default;

  const ReducedSet& reduced() const { return reduced_; }
  bool materialized() const { return materialized_; }
  // Stored coronas in dump order (none when implicit), decoded from the
  // compact keys on request.
  std::size_t size() const { return keys_.size(); }
  Corona corona(std::size_t i) const;
  std::vector<Corona> coronas() const;

  bool contains(const Corona& c) const;

 private:
  friend Atlas derive_atlas(const ReducedSet&, bool, std::uint64_t);

  ReducedSet reduced_;
  bool materialized_ = false;
  // Sorted, unique; 3 bytes per placement (rep lo, rep hi, element index).
  std::vector<std::string> keys_;
};

// Materialized: every corona of every source prototile, pushed through the
// encoding. Implicit: membership is decided by decoding and validating.
Atlas derive_atlas(const ReducedSet& red, bool materialize, std::uint64_t cap = kDefaultCoronaCap);

// Throws when the corona uses a representative the atlas does not know.
bool corona_in_atlas(const Atlas& atlas, const Corona& c);

// Decode-then-validate membership test, shared by implicit atlases.
bool corona_decodes_validly(const ReducedSet& red, const Corona& c);

Patch encode_patch(const ReducedSet& red, const Patch& p);
Patch decode_patch(const ReducedSet& red, const Patch& x);

// Vocabulary for patches over the representatives.
PatchVocabulary reduced_vocabulary(const ReducedSet& red);

std::string dump_atlas(const Atlas& atlas);

}  // namespace atlastile
