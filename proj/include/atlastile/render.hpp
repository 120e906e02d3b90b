#pragma once

// SVG pictures of patches: coloured edge strips for original tiles, a
// transformed "F" glyph for decorated representatives. Cubic patches are
// drawn as one panel per z layer.

#include <array>
#include <string>

#include "atlastile/reduction.hpp"
#include "atlastile/tileset.hpp"

namespace atlastile {

struct RenderStyle {
  double cell_size = 40.0;  // pixels per lattice unit
  double margin = 10.0;
  double strip = 0.22;      // edge strip depth as a fraction of the centre distance
};

// Fill for a facet colour; empty for colour 0, which is never drawn.
std::string palette_colour(Colour c);

// SVG matrix(a b c d e f) entries.
using Affine = std::array<double, 6>;

// Linear action of g in SVG user space (y pointing down), no translation.
Affine glyph_transform(const PointOp& g);

// Glyph outline in glyph-local coordinates, as an SVG path.
const std::string& glyph_path();

std::string render_svg(const TileSet& set, const Patch& patch, const RenderStyle& style = {});
std::string render_svg(const ReducedSet& red, const Patch& patch, const RenderStyle& style = {});

// The original patch on the left, its encoding on the right.
std::string render_pair(const ReducedSet& red, const Patch& patch, const RenderStyle& style = {});

}  // namespace atlastile
