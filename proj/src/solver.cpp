#include "atlastile/solver.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "atlastile/atlas.hpp"
#include "atlastile/error.hpp"

namespace atlastile {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Found: return "found";
    case SolveStatus::Exhausted: return "exhausted";
    case SolveStatus::LimitReached: return "limit";
  }
  return "?";
}

namespace {

struct Option {
  int tile = 0;
  PointOp orientation;
  std::vector<int> facets;  // dense colour ids
};

struct Link {
  int facet, other, other_facet;
};

// Everything the search needs, precomputed once and shared read-only.
struct Model {
  RegionSpec region;
  std::vector<Cell> cells;
  std::vector<std::vector<Link>> links;         // per cell: facets shared with cells at or before it
  std::vector<const std::vector<Option>*> opts;  // per cell
  std::map<ShapeKind, std::vector<Option>> by_shape;
  std::vector<std::vector<char>> allowed;  // dense colour x dense colour
};

Model build_model(const SolveConfig& cfg) {
  Model m;
  m.region = cfg.region;
  const RegionSpec& r = cfg.region;
  for (int k = 0; k < dimension(r.lattice); ++k) {
    if (r.extent[k] < 1) throw Error("solve: region extents must be >= 1");
  }
  const bool atlas_mode = std::holds_alternative<ReducedSet>(cfg.rules);
  const TileSet& source = atlas_mode ? std::get<ReducedSet>(cfg.rules).source() : std::get<TileSet>(cfg.rules);
  if (source.lattice() != r.lattice) throw Error("solve: tile set and region live on different lattices");

  std::map<Colour, int> dense;
  auto colour_id = [&](Colour c) { return dense.emplace(c, static_cast<int>(dense.size())).first->second; };

  auto make_options = [&](ShapeKind shape) {
    std::vector<Option> out;
    if (!atlas_mode) {
      for (const Placement& p : placement_options(source, shape)) {
        Option o{p.tile, p.orientation, {}};
        for (Colour c : effective_facets(p, source)) o.facets.push_back(colour_id(c));
        out.push_back(std::move(o));
      }
      return out;
    }
    const ReducedSet& red = std::get<ReducedSet>(cfg.rules);
    for (int rep = 0; rep < red.size(); ++rep) {
      const ShapeKind rs = red.representatives()[rep].shape;
      if (lattice_of(rs) != r.lattice) continue;
      for (const PointOp& g : lattice_group(r.lattice)) {
        if (image_shape(g, rs) != shape) continue;
        const auto src = red.inverse(rep, g);
        if (!src) continue;
        Option o{rep, g, {}};
        for (Colour c : effective_facets({origin_cell(shape), *src, PointOp::identity(r.lattice)}, source)) o.facets.push_back(colour_id(c));
        out.push_back(std::move(o));
      }
    }
    return out;
  };

  m.cells = r.cells();
  std::map<Cell, int> index;
  for (int i = 0; i < static_cast<int>(m.cells.size()); ++i) index.emplace(m.cells[i], i);
  m.links.resize(m.cells.size());
  m.opts.resize(m.cells.size());
  for (int i = 0; i < static_cast<int>(m.cells.size()); ++i) {
    const ShapeKind shape = shape_at(r.lattice, m.cells[i]);
    auto it = m.by_shape.find(shape);
    if (it == m.by_shape.end()) it = m.by_shape.emplace(shape, make_options(shape)).first;
    m.opts[i] = &it->second;
    for (int k = 0; k < facet_count(shape); ++k) {
      const FacetNeighbour nb = facet_neighbour(r.lattice, m.cells[i], k);
      const auto where = r.resolve(nb.cell);
      if (!where) continue;
      const int j = index.at(*where);
      if (j <= i) m.links[i].push_back({k, j, nb.facet});
    }
  }

  m.allowed.assign(dense.size(), std::vector<char>(dense.size(), 0));
  for (auto [a, ia] : dense)
    for (auto [b, ib] : dense) m.allowed[ia][ib] = source.rule().allows(a, b) ? 1 : 0;
  return m;
}

enum class Outcome : std::uint8_t { Found, Exhausted, Limit, Cancelled };

class Search {
 public:
  Search(const Model& m, std::uint64_t limit, std::atomic<std::uint64_t>& nodes, std::atomic<bool>& stop, bool shuffle,
         std::uint64_t seed)
      : m_(m), limit_(limit), nodes_(nodes), stop_(stop), shuffle_(shuffle), rng_(seed), assign_(m.cells.size(), nullptr) {}

  // `first` restricts the candidates at cell 0 (indices into its options).
  Outcome run(const std::vector<int>& first) {
    first_ = &first;
    return dfs(0);
  }

  const std::vector<const Option*>& assignment() const { return assign_; }

 private:
  bool fits(std::size_t i, const Option& o) const {
    for (const Link& l : m_.links[i]) {
      const int theirs = l.other == static_cast<int>(i) ? o.facets[l.other_facet] : assign_[l.other]->facets[l.other_facet];
      if (!m_.allowed[o.facets[l.facet]][theirs]) return false;
    }
    return true;
  }

  std::vector<int> order(std::size_t i) {
    std::vector<int> idx;
    if (i == 0) {
      idx = *first_;
    } else {
      idx.resize(m_.opts[i]->size());
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
      if (shuffle_) shuffle(idx);
    }
    return idx;
  }

  void shuffle(std::vector<int>& v) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[rng_() % k]);
  }

  Outcome dfs(std::size_t i) {
    if (i == m_.cells.size()) return Outcome::Found;
    for (int k : order(i)) {
      const Option& o = (*m_.opts[i])[k];
      if (!fits(i, o)) continue;
      if (stop_.load(std::memory_order_relaxed)) return Outcome::Cancelled;
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= limit_) {
        nodes_.fetch_sub(1, std::memory_order_relaxed);
        return Outcome::Limit;
      }
      assign_[i] = &o;
      const Outcome r = dfs(i + 1);
      if (r != Outcome::Exhausted) return r;
      assign_[i] = nullptr;
    }
    return Outcome::Exhausted;
  }

  const Model& m_;
  std::uint64_t limit_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& stop_;
  bool shuffle_;
  std::mt19937_64 rng_;
  std::vector<const Option*> assign_;
  const std::vector<int>* first_ = nullptr;
};

Patch to_patch(const Model& m, const std::vector<const Option*>& a) {
  Patch p(m.region);
  for (std::size_t i = 0; i < m.cells.size(); ++i) p.place({m.cells[i], a[i]->tile, a[i]->orientation});
  return p;
}

void verify(const SolveConfig& cfg, const Patch& p) {
  if (const auto* set = std::get_if<TileSet>(&cfg.rules)) {
    const PatchCheck c = patch_valid(*set, p);
    if (!c.valid) throw Error("solver produced an invalid patch: " + c.violation->describe());
    return;
  }
  const ReducedSet& red = std::get<ReducedSet>(cfg.rules);
  const PatchCheck c = patch_valid(red.source(), decode_patch(red, p));
  if (!c.valid) throw Error("solver produced a patch whose decoding is invalid: " + c.violation->describe());
  const Atlas implicit = derive_atlas(red, false);
  for (const auto& [cell, pl] : p.placements()) {
    const auto corona = corona_at(p, cell);
    if (corona && !corona_in_atlas(implicit, *corona)) throw Error("solver produced a corona outside the atlas at " + format_cell(p.region().lattice, cell));
  }
}

SolveResult run(const SolveConfig& cfg, bool shuffle) {
  if (cfg.node_limit == 0) throw Error("solve: node_limit must be positive");
  if (cfg.parallel_width < 1) throw Error("solve: parallel_width must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const Model m = build_model(cfg);

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  SolveResult res;

  // Candidate list for the first cell, shuffled once up front when asked.
  std::mt19937_64 head_rng(cfg.seed);
  std::vector<int> head(m.opts[0]->size());
  for (std::size_t k = 0; k < head.size(); ++k) head[k] = static_cast<int>(k);
  if (shuffle) {
    for (std::size_t k = head.size(); k > 1; --k) std::swap(head[k - 1], head[head_rng() % k]);
  }

  const int width = std::min<int>(cfg.parallel_width, std::max<int>(1, static_cast<int>(head.size())));
  if (width == 1) {
    Search s(m, cfg.node_limit, nodes, stop, shuffle, head_rng());
    const Outcome o = s.run(head);
    res.status = o == Outcome::Found ? SolveStatus::Found : o == Outcome::Limit ? SolveStatus::LimitReached : SolveStatus::Exhausted;
    if (o == Outcome::Found) res.patch = to_patch(m, s.assignment());
  } else {
    std::vector<std::vector<int>> parts(width);
    for (std::size_t k = 0; k < head.size(); ++k) parts[k % width].push_back(head[k]);
    std::vector<Outcome> outcomes(width, Outcome::Exhausted);
    std::mutex mu;
    std::optional<Patch> found;
    std::vector<std::thread> threads;
    for (int w = 0; w < width; ++w) {
      threads.emplace_back([&, w] {
        Search s(m, cfg.node_limit, nodes, stop, shuffle, cfg.seed + 0x9e3779b97f4a7c15ULL * (w + 1));
        outcomes[w] = s.run(parts[w]);
        if (outcomes[w] == Outcome::Found) {
          std::lock_guard lock(mu);
          if (!found) found = to_patch(m, s.assignment());
          stop = true;
        } else if (outcomes[w] == Outcome::Limit) {
          stop = true;
        }
      });
    }
    for (auto& t : threads) t.join();
    if (found) {
      res.status = SolveStatus::Found;
      res.patch = std::move(found);
    } else if (std::all_of(outcomes.begin(), outcomes.end(), [](Outcome o) { return o == Outcome::Exhausted; })) {
      res.status = SolveStatus::Exhausted;
    } else {
      res.status = SolveStatus::LimitReached;
    }
  }
  res.nodes_explored = nodes.load();
  if (res.patch) verify(cfg, *res.patch);
  res.wall_time = std::chrono::steady_clock::now() - t0;
  return res;
}

template <typename Rules>
std::vector<TorusVerdict> exhaust(const Rules& rules, Lattice lattice, int k_max, std::uint64_t node_limit, int width) {
  if (k_max < 1) throw Error("exhaust_torus: k_max must be >= 1");
  std::vector<TorusVerdict> out;
  for (int k = 1; k <= k_max; ++k) {
    SolveConfig cfg{rules, RegionSpec::box(lattice, k, k, lattice == Lattice::Cubic ? k : 1, Boundary::Torus), 0, node_limit, width};
    const SolveResult r = solve(cfg);
    out.push_back({k, r.status, r.nodes_explored});
  }
  return out;
}

}  // namespace

SolveResult solve(const SolveConfig& cfg) { return run(cfg, false); }

SolveResult random_patch(const SolveConfig& cfg) { return run(cfg, true); }

std::vector<TorusVerdict> exhaust_torus(const TileSet& set, int k_max, std::uint64_t node_limit, int parallel_width) {
  return exhaust(set, set.lattice(), k_max, node_limit, parallel_width);
}

std::vector<TorusVerdict> exhaust_torus(const ReducedSet& red, int k_max, std::uint64_t node_limit, int parallel_width) {
  return exhaust(red, red.lattice(), k_max, node_limit, parallel_width);
}

std::string format_verdicts(const std::vector<TorusVerdict>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << "k=" << v[i].k << " "
       << (v[i].status == SolveStatus::Found ? "YES" : v[i].status == SolveStatus::Exhausted ? "NO" : "LIMIT");
  }
  return os.str();
}

}  // namespace atlastile
