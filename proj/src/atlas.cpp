#include "atlastile/atlas.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "atlastile/error.hpp"

namespace atlastile {

std::vector<Placement> placement_options(const TileSet& set, ShapeKind cell_shape) {
  std::vector<Placement> out;
  const Cell cell = origin_cell(cell_shape);
  for (int t = 0; t < set.size(); ++t) {
    const ShapeKind s = set.at(t).shape;
    if (lattice_of(s) != lattice_of(cell_shape)) continue;
    for (const PointOp& g : lattice_group(lattice_of(s))) {
      if (!orientation_admissible(set, s, g) || image_shape(g, s) != cell_shape) continue;
      out.push_back({cell, t, g});
    }
  }
  return out;
}

namespace {

// Depth-first over the touching cells; `visit` sees one reused Corona per hit.
template <typename Visit>
void for_each_corona(const TileSet& set, int center_tile, const PointOp& orientation, Visit&& visit) {
  if (center_tile < 0 || center_tile >= set.size()) throw Error("enumerate_coronas: unknown prototile index " + std::to_string(center_tile));
  const Lattice lattice = lattice_of(set.at(center_tile).shape);
  const ShapeKind cshape = image_shape(orientation, set.at(center_tile).shape);
  const Placement center{origin_cell(cshape), center_tile, orientation};
  const auto& offsets = touching_offsets(cshape);

  // Cell 0 is the centre, cell i > 0 is offsets[i-1].
  std::vector<Cell> cells{center.cell};
  cells.insert(cells.end(), offsets.begin(), offsets.end());
  std::map<Cell, int> index;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) index.emplace(cells[i], i);

  struct Link {
    int facet, other, other_facet;
  };
  std::vector<std::vector<Link>> links(cells.size());
  for (int i = 1; i < static_cast<int>(cells.size()); ++i) {
    for (int k = 0; k < facet_count(shape_at(lattice, cells[i])); ++k) {
      const FacetNeighbour nb = facet_neighbour(lattice, cells[i], k);
      auto it = index.find(nb.cell);
      if (it != index.end() && it->second < i) links[i].push_back({k, it->second, nb.facet});
    }
  }

  struct Option {
    Placement p;
    std::vector<Colour> facets;
  };
  std::map<ShapeKind, std::vector<Option>> options;
  auto options_for = [&](ShapeKind s) -> const std::vector<Option>& {
    auto it = options.find(s);
    if (it == options.end()) {
      std::vector<Option> v;
      for (const Placement& p : placement_options(set, s)) v.push_back({p, effective_facets(p, set)});
      it = options.emplace(s, std::move(v)).first;
    }
    return it->second;
  };

  std::vector<const std::vector<Colour>*> chosen(cells.size(), nullptr);
  std::vector<const Option*> picks(cells.size(), nullptr);
  const std::vector<Colour> center_facets = effective_facets(center, set);
  chosen[0] = &center_facets;

  Corona current{center, {}};
  for (const Cell& off : offsets) current.neighbours.push_back({off, 0, PointOp::identity(lattice)});
  const FacetRule& rule = set.rule();
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == cells.size()) {
      for (std::size_t j = 1; j < cells.size(); ++j) {
        current.neighbours[j - 1].tile = picks[j]->p.tile;
        current.neighbours[j - 1].orientation = picks[j]->p.orientation;
      }
      visit(current);
      return;
    }
    for (const Option& o : options_for(shape_at(lattice, cells[i]))) {
      bool ok = true;
      for (const Link& l : links[i]) {
        if (!rule.allows(o.facets[l.facet], (*chosen[l.other])[l.other_facet])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen[i] = &o.facets;
      picks[i] = &o;
      self(self, i + 1);
    }
  };
  recurse(recurse, 1);
}

}  // namespace

std::vector<Corona> enumerate_coronas(const TileSet& set, int center_tile, const PointOp& orientation, std::uint64_t cap) {
  std::vector<Corona> out;
  for_each_corona(set, center_tile, orientation, [&](const Corona& c) {
    if (out.size() >= cap) throw CapExceeded("corona enumeration exceeded cap of " + std::to_string(cap));
    out.push_back(c);
  });
  return out;
}

std::optional<Corona> corona_at(const Patch& patch, const Cell& cell) {
  const Placement* p = patch.find(cell);
  if (!p) return std::nullopt;
  const RegionSpec& region = patch.region();
  const ShapeKind shape = shape_at(region.lattice, cell);
  Corona c{{origin_cell(shape), p->tile, p->orientation}, {}};
  for (const Cell& off : touching_offsets(shape)) {
    const auto where = region.resolve(translate(off, cell.coords));
    if (!where) return std::nullopt;
    const Placement* q = patch.find(*where);
    if (!q) return std::nullopt;
    c.neighbours.push_back({off, q->tile, q->orientation});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Atlas

namespace {

void check_layout(const Corona& c) {
  const ShapeKind shape = c.center_shape();
  if (c.center.cell != origin_cell(shape)) throw Error("corona centre is not normalised to the origin");
  const auto& offsets = touching_offsets(shape);
  if (c.neighbours.size() != offsets.size()) throw Error("corona has the wrong number of neighbours");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (c.neighbours[i].cell != offsets[i]) throw Error("corona neighbours are out of canonical order");
  }
}

void check_reps(const ReducedSet& red, const Corona& c) {
  auto check = [&](const Placement& p) {
    if (p.tile < 0 || p.tile >= red.size()) throw Error("corona uses unknown representative index " + std::to_string(p.tile));
  };
  check(c.center);
  for (const Placement& p : c.neighbours) check(p);
}

std::string corona_key(const Corona& c) {
  std::string key;
  key.reserve(3 * (c.neighbours.size() + 1));
  auto put = [&](const Placement& p) {
    key.push_back(static_cast<char>(p.tile & 0xff));
    key.push_back(static_cast<char>((p.tile >> 8) & 0xff));
    key.push_back(static_cast<char>(element_index(p.orientation)));
  };
  put(c.center);
  for (const Placement& p : c.neighbours) put(p);
  return key;
}

}  // namespace

bool corona_decodes_validly(const ReducedSet& red, const Corona& c) {
  check_layout(c);
  check_reps(red, c);
  const Lattice lattice = c.center.orientation.lattice();
  RegionSpec region = RegionSpec::box(lattice, 5, 5, lattice == Lattice::Cubic ? 5 : 1);
  region.origin = {-2, -2, lattice == Lattice::Cubic ? -2 : 0};
  Patch decoded(region);
  auto add = [&](const Placement& p) {
    const auto src = red.inverse(p.tile, p.orientation);
    if (!src) return false;
    if (image_shape(p.orientation, red.representatives()[p.tile].shape) != shape_at(lattice, p.cell)) return false;
    decoded.place({p.cell, *src, PointOp::identity(lattice)});
    return true;
  };
  if (!add(c.center)) return false;
  for (const Placement& p : c.neighbours) {
    if (!add(p)) return false;
  }
  return patch_valid(red.source(), decoded).valid;
}

bool Atlas::contains(const Corona& c) const {
  if (!materialized_) return corona_decodes_validly(reduced_, c);
  check_layout(c);
  return std::binary_search(keys_.begin(), keys_.end(), corona_key(c));
}

Corona Atlas::corona(std::size_t i) const {
  const std::string& key = keys_.at(i);
  const Lattice lattice = reduced_.lattice();
  const auto& group = lattice_group(lattice);
  std::size_t pos = 0;
  auto take = [&](const Cell& cell) {
    const int tile = static_cast<unsigned char>(key[pos]) | (static_cast<unsigned char>(key[pos + 1]) << 8);
    const PointOp g = group[static_cast<unsigned char>(key[pos + 2])];
    pos += 3;
    return Placement{cell, tile, g};
  };
  const int rep = static_cast<unsigned char>(key[0]) | (static_cast<unsigned char>(key[1]) << 8);
  const ShapeKind shape = image_shape(group[static_cast<unsigned char>(key[2])], reduced_.representatives()[rep].shape);
  Corona c{take(origin_cell(shape)), {}};
  for (const Cell& off : touching_offsets(shape)) c.neighbours.push_back(take(off));
  return c;
}

std::vector<Corona> Atlas::coronas() const {
  std::vector<Corona> out;
  out.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) out.push_back(corona(i));
  return out;
}

bool corona_in_atlas(const Atlas& atlas, const Corona& c) {
  check_reps(atlas.reduced(), c);
  return atlas.contains(c);
}

Atlas derive_atlas(const ReducedSet& red, bool materialize, std::uint64_t cap) {
  Atlas atlas;
  atlas.reduced_ = red;
  atlas.materialized_ = materialize;
  if (!materialize) return atlas;

  const TileSet& src = red.source();
  Corona lifted;
  auto lift = [&](const Placement& p) {
    const EncodedPair& e = red.forward(p.tile);
    return Placement{p.cell, e.rep, e.element};
  };
  for (int i = 0; i < src.size(); ++i) {
    const Lattice lattice = lattice_of(src.at(i).shape);
    for_each_corona(src, i, PointOp::identity(lattice), [&](const Corona& pc) {
      if (atlas.keys_.size() >= cap) throw CapExceeded("atlas materialization exceeded cap of " + std::to_string(cap));
      lifted.center = lift(pc.center);
      lifted.neighbours.resize(pc.neighbours.size());
      for (std::size_t j = 0; j < pc.neighbours.size(); ++j) lifted.neighbours[j] = lift(pc.neighbours[j]);
      atlas.keys_.push_back(corona_key(lifted));
    });
  }
  std::sort(atlas.keys_.begin(), atlas.keys_.end());
  atlas.keys_.erase(std::unique(atlas.keys_.begin(), atlas.keys_.end()), atlas.keys_.end());
  return atlas;
}

// ---------------------------------------------------------------------------
// Encoding patches

Patch encode_patch(const ReducedSet& red, const Patch& p) {
  Patch out(p.region());
  for (const auto& [cell, pl] : p.placements()) {
    if (pl.tile < 0 || pl.tile >= red.source().size()) {
      throw Error("encode_patch: prototile index " + std::to_string(pl.tile) + " is outside the encoding domain");
    }
    if (!pl.orientation.is_identity()) throw Error("encode_patch: source placements must be translations");
    const EncodedPair& e = red.forward(pl.tile);
    out.place({cell, e.rep, e.element});
  }
  return out;
}

Patch decode_patch(const ReducedSet& red, const Patch& x) {
  Patch out(x.region());
  for (const auto& [cell, pl] : x.placements()) {
    if (pl.tile < 0 || pl.tile >= red.size()) throw Error("decode_patch: unknown representative index " + std::to_string(pl.tile));
    const DecoratedPrototile& rep = red.representatives()[pl.tile];
    const auto src = red.inverse(pl.tile, pl.orientation);
    if (!src) {
      throw Error("decode_patch: (" + rep.id + ", " + element_code(pl.orientation) + ") at " + format_cell(x.region().lattice, cell) +
                  " is not in the encoding image");
    }
    if (image_shape(pl.orientation, rep.shape) != shape_at(x.region().lattice, cell)) {
      throw Error("decode_patch: placement at " + format_cell(x.region().lattice, cell) + " does not fit its cell");
    }
    out.place({cell, *src, PointOp::identity(x.region().lattice)});
  }
  return out;
}

PatchVocabulary reduced_vocabulary(const ReducedSet& red) {
  PatchVocabulary v{red.source().name() + "-" + std::string(to_string(red.mode())), red.lattice(), {}};
  for (const DecoratedPrototile& r : red.representatives()) v.tile_ids.push_back(r.id);
  return v;
}

std::string dump_atlas(const Atlas& atlas) {
  const ReducedSet& red = atlas.reduced();
  std::ostringstream os;
  os << "atlas " << red.source().name() << " " << to_string(red.mode());
  if (!atlas.materialized()) {
    os << " implicit\n";
    return os.str();
  }
  os << " materialized " << atlas.size() << "\n";
  const Lattice lattice = red.lattice();
  auto line = [&](const Placement& p) {
    os << format_cell(lattice, p.cell) << " " << red.representatives()[p.tile].id << " " << element_code(p.orientation) << "\n";
  };
  for (std::size_t i = 0; i < atlas.size(); ++i) {
    const Corona c = atlas.corona(i);
    os << "corona " << i << "\n";
    os << "center ";
    line(c.center);
    for (const Placement& p : c.neighbours) line(p);
  }
  return os.str();
}

}  // namespace atlastile
