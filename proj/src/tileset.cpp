#include "atlastile/tileset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "atlastile/error.hpp"

namespace atlastile {

// ---------------------------------------------------------------------------
// Rules

FacetRule FacetRule::table(std::span<const std::pair<Colour, Colour>> pairs) {
  FacetRule r;
  r.kind_ = RuleKind::Table;
  for (auto [a, b] : pairs) r.pairs_.emplace(std::min(a, b), std::max(a, b));
  return r;
}

bool FacetRule::allows(Colour a, Colour b) const {
  if (kind_ == RuleKind::Identical) return a == b;
  if (a == 0 && b == 0) return true;
  return pairs_.contains({std::min(a, b), std::max(a, b)});
}

// ---------------------------------------------------------------------------
// TileSet

TileSet::TileSet(std::string name, std::vector<Prototile> prototiles, FacetRule rule, IsometryMode isometries)
    : name_(std::move(name)), prototiles_(std::move(prototiles)), rule_(std::move(rule)), isometries_(isometries) {
  std::unordered_set<std::string> ids;
  std::set<Colour> used{0};
  for (const Prototile& p : prototiles_) {
    if (p.id.empty()) throw Error("tile set '" + name_ + "': empty prototile id");
    if (!ids.insert(p.id).second) throw Error("tile set '" + name_ + "': duplicate prototile id '" + p.id + "'");
    if (static_cast<int>(p.facet_colours.size()) != facet_count(p.shape)) {
      throw Error("prototile '" + p.id + "': expected " + std::to_string(facet_count(p.shape)) + " facet colours, got " +
                  std::to_string(p.facet_colours.size()));
    }
    used.insert(p.facet_colours.begin(), p.facet_colours.end());
  }
  for (auto [a, b] : rule_.pairs()) {
    for (Colour c : {a, b}) {
      if (!used.contains(c)) {
        throw Error("tile set '" + name_ + "': rule mentions colour " + std::to_string(c) + " used by no prototile");
      }
    }
  }
}

std::optional<int> TileSet::index_of(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (prototiles_[i].id == id) return i;
  }
  return std::nullopt;
}

bool TileSet::single_lattice() const {
  return std::all_of(prototiles_.begin(), prototiles_.end(), [&](const Prototile& p) {
    return lattice_of(p.shape) == lattice_of(prototiles_.front().shape);
  });
}

Lattice TileSet::lattice() const {
  if (prototiles_.empty()) throw Error("tile set '" + name_ + "' is empty");
  if (!single_lattice()) throw Error("tile set '" + name_ + "' mixes lattices");
  return lattice_of(prototiles_.front().shape);
}

// ---------------------------------------------------------------------------
// Regions and patches

RegionSpec RegionSpec::box(Lattice lattice, int width, int height, int depth, Boundary b) {
  if (width < 1 || height < 1 || depth < 1) throw Error("region extents must be >= 1");
  if (lattice != Lattice::Cubic && depth != 1) throw Error("region depth is only meaningful on the cubic lattice");
  return {lattice, {width, height, depth}, b, {}};
}

bool RegionSpec::contains(const Cell& cell) const {
  if (lattice != Lattice::Triangular && cell.down) return false;
  for (int k = 0; k < 3; ++k) {
    const int lo = origin[k];
    const int hi = k < dimension(lattice) ? origin[k] + extent[k] : origin[k] + 1;
    if (cell.coords[k] < lo || cell.coords[k] >= hi) return false;
  }
  return true;
}

std::optional<Cell> RegionSpec::resolve(const Cell& cell) const {
  if (boundary == Boundary::Free) {
    if (contains(cell)) return cell;
    return std::nullopt;
  }
  Cell out = cell;
  for (int k = 0; k < dimension(lattice); ++k) {
    const int rel = cell.coords[k] - origin[k];
    out.coords[k] = origin[k] + ((rel % extent[k]) + extent[k]) % extent[k];
  }
  if (!contains(out)) return std::nullopt;
  return out;
}

std::vector<Cell> RegionSpec::cells() const {
  std::vector<Cell> out;
  out.reserve(cell_count());
  const int depth = lattice == Lattice::Cubic ? extent[2] : 1;
  for (int z = 0; z < depth; ++z)
    for (int y = 0; y < extent[1]; ++y)
      for (int x = 0; x < extent[0]; ++x) {
        const IVec c{origin[0] + x, origin[1] + y, origin[2] + z};
        out.push_back({c, false});
        if (lattice == Lattice::Triangular) out.push_back({c, true});
      }
  return out;
}

std::size_t RegionSpec::cell_count() const {
  std::size_t n = static_cast<std::size_t>(extent[0]) * extent[1];
  if (lattice == Lattice::Cubic) n *= extent[2];
  if (lattice == Lattice::Triangular) n *= 2;
  return n;
}

Patch::Patch(RegionSpec region) : region_(region) {}

const Placement* Patch::find(const Cell& cell) const {
  auto it = placements_.find(cell);
  return it == placements_.end() ? nullptr : &it->second;
}

void Patch::place(const Placement& p) {
  if (!region_.contains(p.cell)) throw Error("placement at " + format_cell(region_.lattice, p.cell) + " lies outside the region");
  if (!placements_.emplace(p.cell, p).second) {
    throw Error("two placements share cell " + format_cell(region_.lattice, p.cell));
  }
}

// ---------------------------------------------------------------------------
// Validation

bool orientation_admissible(const TileSet& set, ShapeKind shape, const PointOp& orientation) {
  if (orientation.lattice() != lattice_of(shape)) return false;
  if (set.isometries() == IsometryMode::TranslationsOnly) return orientation.is_identity();
  return true;  // every signed permutation accepted by PointOp preserves the lattice
}

std::vector<Colour> effective_facets(const Placement& p, const TileSet& set) {
  if (p.tile < 0 || p.tile >= set.size()) throw Error("placement refers to unknown prototile index " + std::to_string(p.tile));
  const Prototile& proto = set.at(p.tile);
  if (!orientation_admissible(set, proto.shape, p.orientation)) {
    throw Error("orientation " + element_code(p.orientation) + " is not allowed for prototile '" + proto.id + "'");
  }
  const FacetPerm perm = facet_action(p.orientation, proto.shape);
  std::vector<Colour> out(proto.facet_colours.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[perm[k]] = proto.facet_colours[k];
  return out;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << "facet " << facet << " of (" << cell.coords[0] << "," << cell.coords[1] << "," << cell.coords[2]
     << (cell.down ? ",down" : "") << ") colour " << colour << " does not match facet " << other_facet << " of ("
     << other.coords[0] << "," << other.coords[1] << "," << other.coords[2] << (other.down ? ",down" : "")
     << ") colour " << other_colour;
  return os.str();
}

PatchCheck patch_valid(const TileSet& set, const Patch& patch) {
  const RegionSpec& region = patch.region();
  if (!patch.empty() && set.lattice() != region.lattice) throw Error("patch and tile set live on different lattices");

  std::map<Cell, std::vector<Colour>> facets;
  for (const auto& [cell, p] : patch.placements()) {
    auto eff = effective_facets(p, set);
    const ShapeKind shape = set.at(p.tile).shape;
    if (image_shape(p.orientation, shape) != shape_at(region.lattice, cell)) {
      throw Error("placement at " + format_cell(region.lattice, cell) + " does not fit its cell");
    }
    facets.emplace(cell, std::move(eff));
  }

  for (const auto& [cell, mine] : facets) {
    for (int k = 0; k < static_cast<int>(mine.size()); ++k) {
      const FacetNeighbour nb = facet_neighbour(region.lattice, cell, k);
      const auto where = region.resolve(nb.cell);
      if (!where) continue;
      auto it = facets.find(*where);
      if (it == facets.end()) continue;
      const Colour theirs = it->second[nb.facet];
      if (!set.rule().allows(mine[k], theirs)) {
        return {false, Violation{cell, k, *where, nb.facet, mine[k], theirs}};
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

template <typename Int>
Int parse_int(const std::string& s, std::size_t line, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(line, std::string("expected ") + what + ", got '" + s + "'");
  return v;
}

Lattice parse_space(const std::string& s, std::size_t line) {
  if (s == "square2d") return Lattice::Square;
  if (s == "cube3d") return Lattice::Cubic;
  if (s == "tri2d") return Lattice::Triangular;
  throw ParseError(line, "unknown space '" + s + "'");
}

// Splits text into (line number, tokens) for non-empty, comment-stripped lines.
std::vector<std::pair<std::size_t, std::vector<std::string>>> logical_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokens(line);
    if (!toks.empty()) out.emplace_back(lineno, std::move(toks));
    start = end + 1;
  }
  return out;
}

}  // namespace

TileSet parse_tileset(std::string_view text) {
  std::optional<std::string> name;
  std::optional<Lattice> space;
  IsometryMode iso = IsometryMode::TranslationsOnly;
  std::optional<RuleKind> rule_kind;
  std::vector<std::pair<Colour, Colour>> pairs;
  std::vector<Prototile> tiles;
  std::unordered_set<std::string> seen_ids;

  for (const auto& [line, t] : logical_lines(text)) {
    const std::string& key = t[0];
    if (key == "tileset") {
      if (t.size() != 2) throw ParseError(line, "expected 'tileset <name>'");
      if (name) throw ParseError(line, "duplicate 'tileset' line");
      name = t[1];
    } else if (key == "space") {
      if (t.size() != 2) throw ParseError(line, "expected 'space square2d|cube3d|tri2d'");
      if (space) throw ParseError(line, "duplicate 'space' line");
      space = parse_space(t[1], line);
    } else if (key == "isometries") {
      if (t.size() != 2 || (t[1] != "translations" && t[1] != "all")) {
        throw ParseError(line, "expected 'isometries translations|all'");
      }
      iso = t[1] == "all" ? IsometryMode::AllIsometries : IsometryMode::TranslationsOnly;
    } else if (key == "rule") {
      if (t.size() != 2 || (t[1] != "identical" && t[1] != "table")) throw ParseError(line, "expected 'rule identical|table'");
      if (rule_kind) throw ParseError(line, "duplicate 'rule' line");
      rule_kind = t[1] == "table" ? RuleKind::Table : RuleKind::Identical;
    } else if (key == "pair") {
      if (rule_kind != RuleKind::Table) throw ParseError(line, "'pair' requires a preceding 'rule table'");
      if (t.size() != 3) throw ParseError(line, "expected 'pair <a> <b>'");
      pairs.emplace_back(parse_int<Colour>(t[1], line, "colour"), parse_int<Colour>(t[2], line, "colour"));
    } else if (key == "tile") {
      if (!space) throw ParseError(line, "'tile' before 'space'");
      if (t.size() < 2) throw ParseError(line, "expected 'tile <id> <colours...>'");
      Prototile p;
      p.id = t[1];
      std::size_t first = 2;
      if (*space == Lattice::Triangular) {
        if (t.size() < 3 || (t[2] != "up" && t[2] != "down")) throw ParseError(line, "triangle tiles need 'up' or 'down' after the id");
        p.shape = t[2] == "up" ? ShapeKind::TriangleUp : ShapeKind::TriangleDown;
        first = 3;
      } else {
        p.shape = *space == Lattice::Cubic ? ShapeKind::Cube3D : ShapeKind::Square2D;
      }
      const std::size_t k = t.size() - first;
      if (static_cast<int>(k) != facet_count(p.shape)) {
        throw ParseError(line, "tile '" + p.id + "' has " + std::to_string(k) + " facet colours, expected " +
                                   std::to_string(facet_count(p.shape)));
      }
      for (std::size_t i = first; i < t.size(); ++i) p.facet_colours.push_back(parse_int<Colour>(t[i], line, "colour"));
      if (!seen_ids.insert(p.id).second) throw ParseError(line, "duplicate tile id '" + p.id + "'");
      tiles.push_back(std::move(p));
    } else {
      throw ParseError(line, "unknown directive '" + key + "'");
    }
  }
  if (!name) throw ParseError(0, "missing 'tileset <name>' line");
  if (!space) throw ParseError(0, "missing 'space' line");
  if (!rule_kind) throw ParseError(0, "missing 'rule' line");
  const FacetRule rule = *rule_kind == RuleKind::Table ? FacetRule::table(pairs) : FacetRule::identical();
  return TileSet(*name, std::move(tiles), rule, iso);
}

std::string serialize_tileset(const TileSet& set) {
  std::ostringstream os;
  os << "tileset " << set.name() << "\n";
  os << "space " << to_string(set.lattice()) << "\n";
  os << "isometries " << (set.isometries() == IsometryMode::AllIsometries ? "all" : "translations") << "\n";
  os << "rule " << (set.rule().kind() == RuleKind::Table ? "table" : "identical") << "\n";
  for (auto [a, b] : set.rule().pairs()) os << "pair " << a << " " << b << "\n";
  for (const Prototile& p : set.prototiles()) {
    os << "tile " << p.id;
    if (p.shape == ShapeKind::TriangleUp) os << " up";
    if (p.shape == ShapeKind::TriangleDown) os << " down";
    for (Colour c : p.facet_colours) os << " " << c;
    os << "\n";
  }
  return os.str();
}

TileSet load_tileset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tile set file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tileset(ss.str());
}

PatchVocabulary vocabulary(const TileSet& set) {
  PatchVocabulary v{set.name(), set.lattice(), {}};
  for (const Prototile& p : set.prototiles()) v.tile_ids.push_back(p.id);
  return v;
}

std::string format_cell(Lattice lattice, const Cell& cell) {
  std::ostringstream os;
  os << cell.coords[0] << " " << cell.coords[1];
  if (lattice == Lattice::Cubic) os << " " << cell.coords[2];
  if (lattice == Lattice::Triangular) os << (cell.down ? " D" : " U");
  return os.str();
}

Patch parse_patch(std::string_view text, const PatchVocabulary& vocab) {
  const auto lines = logical_lines(text);
  if (lines.empty()) throw ParseError(0, "empty patch file");
  const auto& [hline, h] = lines.front();
  const bool cubic = vocab.lattice == Lattice::Cubic;
  const std::size_t want = cubic ? 6 : 5;
  if (h[0] != "patch" || h.size() != want) {
    throw ParseError(hline, cubic ? "expected 'patch <name> <W> <H> <D> free|torus'" : "expected 'patch <name> <W> <H> free|torus'");
  }
  if (h[1] != vocab.set_name) throw ParseError(hline, "patch is for '" + h[1] + "', expected '" + vocab.set_name + "'");
  const int w = parse_int<int>(h[2], hline, "width");
  const int ht = parse_int<int>(h[3], hline, "height");
  const int d = cubic ? parse_int<int>(h[4], hline, "depth") : 1;
  const std::string& b = h.back();
  if (b != "free" && b != "torus") throw ParseError(hline, "expected 'free' or 'torus', got '" + b + "'");
  if (w < 1 || ht < 1 || d < 1) throw ParseError(hline, "region extents must be >= 1");
  RegionSpec region = RegionSpec::box(vocab.lattice, w, ht, d, b == "torus" ? Boundary::Torus : Boundary::Free);

  std::size_t body = 1;
  if (lines.size() > 1 && lines[1].second[0] == "origin") {
    const auto& [oline, o] = lines[1];
    if (o.size() != (cubic ? 4u : 3u)) throw ParseError(oline, "malformed 'origin' line");
    for (std::size_t k = 1; k < o.size(); ++k) region.origin[k - 1] = parse_int<int>(o[k], oline, "origin coordinate");
    body = 2;
  }

  Patch patch(region);
  const std::size_t ncoord = vocab.lattice == Lattice::Square ? 2 : 3;
  for (std::size_t i = body; i < lines.size(); ++i) {
    const auto& [line, t] = lines[i];
    if (t.size() != ncoord + 2) throw ParseError(line, "expected '<cell> <tile-id> <orientation-code>'");
    Cell cell;
    cell.coords[0] = parse_int<int>(t[0], line, "coordinate");
    cell.coords[1] = parse_int<int>(t[1], line, "coordinate");
    if (vocab.lattice == Lattice::Cubic) cell.coords[2] = parse_int<int>(t[2], line, "coordinate");
    if (vocab.lattice == Lattice::Triangular) {
      if (t[2] != "U" && t[2] != "D") throw ParseError(line, "triangle cells end in U or D");
      cell.down = t[2] == "D";
    }
    const std::string& id = t[ncoord];
    auto it = std::find(vocab.tile_ids.begin(), vocab.tile_ids.end(), id);
    if (it == vocab.tile_ids.end()) throw ParseError(line, "unknown tile id '" + id + "'");
    Placement p{cell, static_cast<int>(it - vocab.tile_ids.begin()), PointOp::identity(vocab.lattice)};
    try {
      p.orientation = parse_element_code(vocab.lattice, t[ncoord + 1]);
      patch.place(p);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  return patch;
}

std::string serialize_patch(const Patch& patch, const PatchVocabulary& vocab) {
  const RegionSpec& r = patch.region();
  std::ostringstream os;
  os << "patch " << vocab.set_name << " " << r.extent[0] << " " << r.extent[1];
  if (r.lattice == Lattice::Cubic) os << " " << r.extent[2];
  os << (r.boundary == Boundary::Torus ? " torus" : " free") << "\n";
  if (r.origin != IVec{}) {
    os << "origin " << r.origin[0] << " " << r.origin[1];
    if (r.lattice == Lattice::Cubic) os << " " << r.origin[2];
    os << "\n";
  }
  for (const Cell& c : r.cells()) {
    const Placement* p = patch.find(c);
    if (!p) continue;
    os << format_cell(r.lattice, c) << " " << vocab.tile_ids.at(p->tile) << " " << element_code(p->orientation) << "\n";
  }
  return os.str();
}

}  // namespace atlastile
