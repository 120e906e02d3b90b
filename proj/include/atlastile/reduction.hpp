#pragma once

// Shrinking a translation-only prototile set: each original prototile becomes
// a (representative, point-group element) pair over a smaller set of
// decorated prototiles.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atlastile/geometry.hpp"
#include "atlastile/tileset.hpp"

namespace atlastile {

enum class ReductionMode : std::uint8_t { C1, C2 };

std::string_view to_string(ReductionMode mode);
ReductionMode parse_mode(std::string_view text);

struct TranslationClass {
  int class_id = 0;
  ShapeKind shape = ShapeKind::Square2D;
  std::vector<int> members;  // prototile indices, input order
  std::vector<std::string> member_ids;
};

// Classes are numbered in order of first appearance in the tile set.
std::vector<TranslationClass> partition_translation(const TileSet& set);

struct IsometryClass {
  int class_id = 0;
  std::vector<int> translation_classes;  // ids into partition_translation()
  int representative = 0;                // largest member class, lowest id on ties
  // For each non-representative class: a point operation carrying its shape
  // onto the representative's shape.
  std::map<int, PointOp> alpha;
};

std::vector<IsometryClass> partition_isometry(const TileSet& set);

PointGroup class_group(const TranslationClass& c);

struct ClassEncoding {
  int k = 0;  // representatives needed: ceil(|class| / |G_s|)
  // Per member, in class order: (representative slot, element of G_s).
  std::vector<std::pair<int, PointOp>> assignment;
};

ClassEncoding build_encoding(const TranslationClass& c);

struct EncodedPair {
  int rep = 0;
  PointOp element;

  friend bool operator==(const EncodedPair&, const EncodedPair&) = default;
};

struct DecoratedPrototile {
  std::string id;    // "X0", "X1", ...
  ShapeKind shape = ShapeKind::Square2D;
  std::string origin;  // source prototile the representative was chosen from

  friend bool operator==(const DecoratedPrototile&, const DecoratedPrototile&) = default;
};

class ReducedSet {
 public:
  ReducedSet() = default;
  // Checks that the pairs are distinct and that every element carries the
  // representative's shape to the source prototile's shape.
  ReducedSet(TileSet source, ReductionMode mode, std::vector<DecoratedPrototile> reps, std::vector<EncodedPair> forward);

  const TileSet& source() const { return source_; }
  ReductionMode mode() const { return mode_; }
  const std::vector<DecoratedPrototile>& representatives() const { return reps_; }
  int size() const { return static_cast<int>(reps_.size()); }
  const std::vector<EncodedPair>& forward() const { return forward_; }
  const EncodedPair& forward(int source_index) const { return forward_.at(source_index); }
  // Source prototile index, or nullopt when the pair is outside the image.
  std::optional<int> inverse(int rep, const PointOp& element) const;
  std::optional<int> rep_index(std::string_view id) const;

  // The reduced tiles live on the source lattice (single-lattice sets only).
  Lattice lattice() const { return source_.lattice(); }

  friend bool operator==(const ReducedSet& a, const ReducedSet& b) {
    return a.source_ == b.source_ && a.mode_ == b.mode_ && a.reps_ == b.reps_ && a.forward_ == b.forward_;
  }

 private:
  TileSet source_;
  ReductionMode mode_ = ReductionMode::C1;
  std::vector<DecoratedPrototile> reps_;
  std::vector<EncodedPair> forward_;
  std::vector<std::vector<int>> inverse_;  // [rep][element_index] -> source index or -1
};

// Requires a translations-only source.
ReducedSet reduce(const TileSet& set, ReductionMode mode);

// Formula value, computed from class sizes alone.
int reduced_cardinality(const TileSet& set, ReductionMode mode);

std::string serialize_reduced(const ReducedSet& red);
ReducedSet parse_reduced(std::string_view text, const TileSet& source);

// Chiral marker drawn inside a representative, as lattice points scaled so
// that point operations act on them linearly (axial coordinates for
// triangles).
const std::vector<IVec>& decoration_points(ShapeKind shape);

// Elements of point_group(shape) that map the decoration onto itself up to
// translation. Only the identity for a usable decoration.
std::vector<PointOp> decoration_stabilizer(ShapeKind shape);

}  // namespace atlastile
