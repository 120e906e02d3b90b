#include "atlastile/reduction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "atlastile/error.hpp"

namespace atlastile {

std::string_view to_string(ReductionMode mode) { return mode == ReductionMode::C1 ? "c1" : "c2"; }

ReductionMode parse_mode(std::string_view text) {
  if (text == "c1" || text == "C1") return ReductionMode::C1;
  if (text == "c2" || text == "C2") return ReductionMode::C2;
  throw Error("unknown reduction mode '" + std::string(text) + "' (expected c1 or c2)");
}

std::vector<TranslationClass> partition_translation(const TileSet& set) {
  std::vector<TranslationClass> classes;
  for (int i = 0; i < set.size(); ++i) {
    const Prototile& p = set.at(i);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const TranslationClass& c) { return c.shape == p.shape; });
    if (it == classes.end()) {
      classes.push_back({static_cast<int>(classes.size()), p.shape, {}, {}});
      it = classes.end() - 1;
    }
    it->members.push_back(i);
    it->member_ids.push_back(p.id);
  }
  return classes;
}

std::vector<IsometryClass> partition_isometry(const TileSet& set) {
  const auto tclasses = partition_translation(set);
  std::vector<IsometryClass> out;
  std::vector<Lattice> keys;
  for (const TranslationClass& c : tclasses) {
    const Lattice key = lattice_of(c.shape);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      out.push_back({static_cast<int>(out.size()), {}, c.class_id, {}});
      it = keys.end() - 1;
    }
    out[it - keys.begin()].translation_classes.push_back(c.class_id);
  }
  for (IsometryClass& ic : out) {
    int best = ic.translation_classes.front();
    for (int id : ic.translation_classes) {
      if (tclasses[id].members.size() > tclasses[best].members.size()) best = id;
    }
    ic.representative = best;
    const ShapeKind target = tclasses[best].shape;
    for (int id : ic.translation_classes) {
      if (id == best) continue;
      const ShapeKind from = tclasses[id].shape;
      for (const PointOp& g : lattice_group(lattice_of(from))) {
        if (image_shape(g, from) == target) {
          ic.alpha.emplace(id, g);
          break;
        }
      }
    }
  }
  return out;
}

PointGroup class_group(const TranslationClass& c) { return point_group(c.shape); }

ClassEncoding build_encoding(const TranslationClass& c) {
  if (c.members.empty()) throw Error("build_encoding: empty class");
  const PointGroup g = class_group(c);
  const int n = static_cast<int>(c.members.size());
  const int order = static_cast<int>(g.order());
  ClassEncoding enc;
  enc.k = (n + order - 1) / order;
  for (int j = 0; j < n; ++j) enc.assignment.emplace_back(j / order, g.elements[j % order]);
  return enc;
}

ReducedSet::ReducedSet(TileSet source, ReductionMode mode, std::vector<DecoratedPrototile> reps,
                       std::vector<EncodedPair> forward)
    : source_(std::move(source)), mode_(mode), reps_(std::move(reps)), forward_(std::move(forward)) {
  if (static_cast<int>(forward_.size()) != source_.size()) throw Error("reduced set: encoding does not cover the source");
  std::set<std::string> ids;
  inverse_.resize(reps_.size());
  for (std::size_t r = 0; r < reps_.size(); ++r) {
    if (!ids.insert(reps_[r].id).second) throw Error("reduced set: duplicate representative id '" + reps_[r].id + "'");
    inverse_[r].assign(lattice_group(lattice_of(reps_[r].shape)).size(), -1);
  }
  for (int i = 0; i < source_.size(); ++i) {
    const EncodedPair& e = forward_[i];
    const Prototile& p = source_.at(i);
    if (e.rep < 0 || e.rep >= size()) throw Error("reduced set: '" + p.id + "' maps to an unknown representative");
    const ShapeKind rshape = reps_[e.rep].shape;
    if (e.element.lattice() != lattice_of(rshape) || image_shape(e.element, rshape) != p.shape) {
      throw Error("reduced set: element " + element_code(e.element) + " does not carry " + reps_[e.rep].id + " onto the shape of '" +
                  p.id + "'");
    }
    int& slot = inverse_[e.rep][element_index(e.element)];
    if (slot >= 0) {
      throw Error("encoding collision: '" + source_.at(slot).id + "' and '" + p.id + "' both map to (" + reps_[e.rep].id + ", " +
                  element_code(e.element) + ")");
    }
    slot = i;
  }
}

std::optional<int> ReducedSet::inverse(int rep, const PointOp& element) const {
  if (rep < 0 || rep >= size()) return std::nullopt;
  if (element.lattice() != lattice_of(reps_[rep].shape)) return std::nullopt;
  const int s = inverse_[rep][element_index(element)];
  if (s < 0) return std::nullopt;
  return s;
}

std::optional<int> ReducedSet::rep_index(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (reps_[i].id == id) return i;
  }
  return std::nullopt;
}

ReducedSet reduce(const TileSet& set, ReductionMode mode) {
  if (set.isometries() != IsometryMode::TranslationsOnly) {
    throw Error("reduce: source tile set '" + set.name() + "' must be placed by translations only");
  }
  const auto tclasses = partition_translation(set);
  std::vector<DecoratedPrototile> reps;
  std::vector<EncodedPair> forward(set.size());

  auto add_reps = [&](const TranslationClass& c, int k) {
    const int base = static_cast<int>(reps.size());
    for (int s = 0; s < k; ++s) reps.push_back({"X" + std::to_string(base + s), c.shape, c.member_ids[s]});
    return base;
  };

  if (mode == ReductionMode::C1) {
    for (const TranslationClass& c : tclasses) {
      const ClassEncoding enc = build_encoding(c);
      const int base = add_reps(c, enc.k);
      for (std::size_t j = 0; j < c.members.size(); ++j) {
        forward[c.members[j]] = {base + enc.assignment[j].first, enc.assignment[j].second};
      }
    }
  } else {
    for (const IsometryClass& ic : partition_isometry(set)) {
      const TranslationClass& rc = tclasses[ic.representative];
      const ClassEncoding renc = build_encoding(rc);
      const int base = add_reps(rc, renc.k);
      for (int id : ic.translation_classes) {
        const TranslationClass& c = tclasses[id];
        const ClassEncoding enc = id == ic.representative ? renc : build_encoding(c);
        for (std::size_t j = 0; j < c.members.size(); ++j) {
          const auto& [slot, g] = enc.assignment[j];
          const PointOp element = id == ic.representative ? g : compose(ic.alpha.at(id), g);
          forward[c.members[j]] = {base + slot, element};
        }
      }
    }
  }
  return ReducedSet(set, mode, std::move(reps), std::move(forward));
}

int reduced_cardinality(const TileSet& set, ReductionMode mode) {
  const auto tclasses = partition_translation(set);
  auto ceil_div = [](const TranslationClass& c) {
    const int order = static_cast<int>(class_group(c).order());
    return (static_cast<int>(c.members.size()) + order - 1) / order;
  };
  int total = 0;
  if (mode == ReductionMode::C1) {
    for (const TranslationClass& c : tclasses) total += ceil_div(c);
  } else {
    for (const IsometryClass& ic : partition_isometry(set)) total += ceil_div(tclasses[ic.representative]);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reduced set files

namespace {

ShapeKind parse_shape(const std::string& s, std::size_t line) {
  for (ShapeKind k : {ShapeKind::Square2D, ShapeKind::Cube3D, ShapeKind::TriangleUp, ShapeKind::TriangleDown}) {
    if (to_string(k) == s) return k;
  }
  throw ParseError(line, "unknown shape '" + s + "'");
}

}  // namespace

std::string serialize_reduced(const ReducedSet& red) {
  std::ostringstream os;
  os << "reduced " << red.source().name() << "\n";
  os << "mode " << to_string(red.mode()) << "\n";
  for (const DecoratedPrototile& r : red.representatives()) {
    os << "rep " << r.id << " " << to_string(r.shape) << " " << r.origin << "\n";
  }
  for (int i = 0; i < red.source().size(); ++i) {
    const EncodedPair& e = red.forward(i);
    os << red.source().at(i).id << " -> " << red.representatives()[e.rep].id << " " << element_code(e.element) << "\n";
  }
  return os.str();
}

ReducedSet parse_reduced(std::string_view text, const TileSet& source) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  std::optional<ReductionMode> mode;
  bool header = false;
  std::vector<DecoratedPrototile> reps;
  std::vector<std::optional<EncodedPair>> forward(source.size());

  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> t;
    for (std::string w; ls >> w;) t.push_back(w);
    if (t.empty()) continue;
    if (t[0] == "reduced") {
      if (t.size() != 2) throw ParseError(line, "expected 'reduced <tileset-name>'");
      if (t[1] != source.name()) throw ParseError(line, "reduction of '" + t[1] + "', expected '" + source.name() + "'");
      header = true;
    } else if (t[0] == "mode") {
      if (t.size() != 2) throw ParseError(line, "expected 'mode c1|c2'");
      try {
        mode = parse_mode(t[1]);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    } else if (t[0] == "rep") {
      if (t.size() != 4) throw ParseError(line, "expected 'rep <id> <shape> <origin-id>'");
      reps.push_back({t[1], parse_shape(t[2], line), t[3]});
    } else if (t.size() == 4 && t[1] == "->") {
      const auto src = source.index_of(t[0]);
      if (!src) throw ParseError(line, "unknown source prototile '" + t[0] + "'");
      auto rep = std::find_if(reps.begin(), reps.end(), [&](const DecoratedPrototile& r) { return r.id == t[2]; });
      if (rep == reps.end()) throw ParseError(line, "unknown representative '" + t[2] + "'");
      if (forward[*src]) throw ParseError(line, "prototile '" + t[0] + "' mapped twice");
      try {
        forward[*src] = EncodedPair{static_cast<int>(rep - reps.begin()), parse_element_code(lattice_of(rep->shape), t[3])};
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    } else {
      throw ParseError(line, "unrecognised line");
    }
  }
  if (!header) throw ParseError(0, "missing 'reduced' header");
  if (!mode) throw ParseError(0, "missing 'mode' line");
  std::vector<EncodedPair> fwd;
  for (int i = 0; i < source.size(); ++i) {
    if (!forward[i]) throw ParseError(0, "prototile '" + source.at(i).id + "' has no mapping");
    fwd.push_back(*forward[i]);
  }
  return ReducedSet(source, *mode, std::move(reps), std::move(fwd));
}

// ---------------------------------------------------------------------------
// Decorations

const std::vector<IVec>& decoration_points(ShapeKind shape) {
  // An "F": stem, top bar, middle bar.
  static const std::vector<IVec> flat{{0, -2, 0}, {0, -1, 0}, {0, 0, 0}, {0, 1, 0}, {0, 2, 0},
                                      {1, 2, 0},  {2, 2, 0},  {1, 0, 0}};
  // Lifting the foot of the stem out of the plane breaks the z mirror.
  static const std::vector<IVec> solid = [] {
    auto v = flat;
    v.push_back({0, -2, 1});
    return v;
  }();
  return shape == ShapeKind::Cube3D ? solid : flat;
}

std::vector<PointOp> decoration_stabilizer(ShapeKind shape) {
  auto normalise = [](std::vector<IVec> pts) {
    std::sort(pts.begin(), pts.end());
    const IVec lo = pts.front();
    for (IVec& p : pts) p = p - lo;
    return pts;
  };
  const auto& pts = decoration_points(shape);
  const auto base = normalise(pts);
  std::vector<PointOp> out;
  for (const PointOp& g : point_group(shape).elements) {
    std::vector<IVec> img;
    img.reserve(pts.size());
    for (const IVec& p : pts) img.push_back(g.apply(p));
    if (normalise(std::move(img)) == base) out.push_back(g);
  }
  return out;
}

}  // namespace atlastile
