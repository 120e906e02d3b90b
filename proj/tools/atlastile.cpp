// atlastile: command-line front end.
//
// Exit codes: 0 success / found, 1 exhausted / invalid, 2 node limit reached,
// 3 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "atlastile/atlas.hpp"
#include "atlastile/error.hpp"
#include "atlastile/reduction.hpp"
#include "atlastile/render.hpp"
#include "atlastile/solver.hpp"
#include "atlastile/tileset.hpp"

using namespace atlastile;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kLimit = 2;
constexpr int kUsage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

int status_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Found: return kOk;
    case SolveStatus::Exhausted: return kNo;
    case SolveStatus::LimitReached: return kLimit;
  }
  return kUsage;
}

struct Options {
  std::string in, out, mode, svg, patch;
  int width = 4, height = 4, depth = 1;
  bool torus = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t node_limit = 100'000'000;
  int parallel = 1;
  int kmax = 4;
  std::uint64_t cap = kDefaultCoronaCap;
  bool implicit = false;
  bool materialize = false;
};

std::string join_ints(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

int cmd_counts(const Options& o) {
  const TileSet set = load_tileset(o.in);
  const auto classes = partition_translation(set);
  std::vector<std::size_t> sizes, orders;
  for (const TranslationClass& c : classes) {
    sizes.push_back(c.members.size());
    orders.push_back(class_group(c).order());
  }
  const bool same = std::all_of(orders.begin(), orders.end(), [&](std::size_t g) { return g == orders.front(); });
  std::cout << "|P|=" << set.size() << ", classes: " << join_ints(sizes) << ", |G_s|="
            << (same && !orders.empty() ? std::to_string(orders.front()) : join_ints(orders))
            << ", C1=" << reduced_cardinality(set, ReductionMode::C1) << ", C2=" << reduced_cardinality(set, ReductionMode::C2) << "\n";
  return kOk;
}

ReductionMode mode_of(const Options& o) { return parse_mode(o.mode.empty() ? "c1" : o.mode); }

int cmd_reduce(const Options& o) {
  const TileSet set = load_tileset(o.in);
  write_output(o.out, serialize_reduced(reduce(set, mode_of(o))));
  return kOk;
}

SolveConfig config_for(const Options& o, const TileSet& set) {
  const Lattice lattice = set.lattice();
  SolveConfig cfg{set, RegionSpec::box(lattice, o.width, o.height, lattice == Lattice::Cubic ? o.depth : 1,
                                       o.torus ? Boundary::Torus : Boundary::Free),
                  o.seed.value_or(0), o.node_limit, o.parallel};
  if (!o.mode.empty()) cfg.rules = reduce(set, mode_of(o));
  return cfg;
}

int cmd_tile(const Options& o) {
  const TileSet set = load_tileset(o.in);
  const SolveConfig cfg = config_for(o, set);
  const SolveResult r = o.seed ? random_patch(cfg) : solve(cfg);
  std::cerr << "status=" << to_string(r.status) << " nodes=" << r.nodes_explored << " time=" << r.wall_time.count() << "s\n";
  if (r.patch) {
    const bool reduced = std::holds_alternative<ReducedSet>(cfg.rules);
    const PatchVocabulary vocab = reduced ? reduced_vocabulary(std::get<ReducedSet>(cfg.rules)) : vocabulary(set);
    write_output(o.out, serialize_patch(*r.patch, vocab));
    if (!o.svg.empty()) {
      write_output(o.svg, reduced ? render_svg(std::get<ReducedSet>(cfg.rules), *r.patch) : render_svg(set, *r.patch));
    }
  }
  return status_code(r.status);
}

int cmd_exhaust(const Options& o) {
  const TileSet set = load_tileset(o.in);
  const auto verdicts = o.mode.empty() ? exhaust_torus(set, o.kmax, o.node_limit, o.parallel)
                                       : exhaust_torus(reduce(set, mode_of(o)), o.kmax, o.node_limit, o.parallel);
  std::cout << format_verdicts(verdicts) << "\n";
  bool any_limit = false;
  for (const TorusVerdict& v : verdicts) {
    if (v.status == SolveStatus::Found) return kOk;
    any_limit |= v.status == SolveStatus::LimitReached;
  }
  return any_limit ? kLimit : kNo;
}

int cmd_verify(const Options& o) {
  const TileSet set = load_tileset(o.in);
  const std::string text = read_file(o.patch);
  if (o.mode.empty()) {
    const PatchCheck c = patch_valid(set, parse_patch(text, vocabulary(set)));
    std::cout << (c.valid ? "valid" : "invalid: " + c.violation->describe()) << "\n";
    return c.valid ? kOk : kNo;
  }
  const ReducedSet red = reduce(set, mode_of(o));
  const Patch x = parse_patch(text, reduced_vocabulary(red));
  const Atlas atlas = derive_atlas(red, false);
  std::size_t checked = 0;
  for (const auto& [cell, p] : x.placements()) {
    const auto corona = corona_at(x, cell);
    if (!corona) continue;
    ++checked;
    if (!corona_in_atlas(atlas, *corona)) {
      std::cout << "invalid: corona at " << format_cell(red.lattice(), cell) << " is not in the atlas\n";
      return kNo;
    }
  }
  std::cout << "valid (" << checked << " interior coronas checked)\n";
  return kOk;
}

int cmd_roundtrip(const Options& o) {
  const TileSet set = load_tileset(o.in);
  Options po = o;
  po.mode.clear();
  const SolveConfig cfg = config_for(po, set);
  const SolveResult r = o.seed ? random_patch(cfg) : solve(cfg);
  if (!r.patch) {
    std::cout << "no patch: " << to_string(r.status) << "\n";
    return status_code(r.status);
  }
  const ReducedSet red = reduce(set, mode_of(o));
  const Patch x = encode_patch(red, *r.patch);
  const bool same = decode_patch(red, x) == *r.patch;
  const Atlas atlas = derive_atlas(red, false);
  std::size_t interior = 0, passed = 0;
  for (const auto& [cell, p] : x.placements()) {
    const auto corona = corona_at(x, cell);
    if (!corona) continue;
    ++interior;
    passed += corona_in_atlas(atlas, *corona) ? 1 : 0;
  }
  std::cout << "encode/decode identity: " << (same ? "yes" : "no") << ", interior coronas in atlas: " << passed << "/" << interior << "\n";
  if (!o.svg.empty()) write_output(o.svg, render_pair(red, *r.patch));
  return same && passed == interior ? kOk : kNo;
}

int cmd_atlas(const Options& o) {
  const TileSet set = load_tileset(o.in);
  // Cubic coronas have 26 neighbours; those atlases stay implicit unless asked.
  const bool materialize = o.materialize || (!o.implicit && set.lattice() != Lattice::Cubic);
  const Atlas atlas = derive_atlas(reduce(set, mode_of(o)), materialize, o.cap);
  write_output(o.out, dump_atlas(atlas));
  return kOk;
}

int cmd_render(const Options& o) {
  const TileSet set = load_tileset(o.in);
  const std::string text = read_file(o.patch);
  std::string svg;
  if (o.mode.empty()) {
    svg = render_svg(set, parse_patch(text, vocabulary(set)));
  } else {
    const ReducedSet red = reduce(set, mode_of(o));
    // An original patch renders as a side-by-side pair; a reduced one alone.
    std::istringstream head(text);
    std::string word, name;
    head >> word >> name;
    if (name == set.name()) {
      svg = render_pair(red, parse_patch(text, vocabulary(set)));
    } else {
      svg = render_svg(red, parse_patch(text, reduced_vocabulary(red)));
    }
  }
  write_output(o.svg.empty() ? o.out : o.svg, svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduce coloured prototile sets and search for tilings"};
  app.require_subcommand(1);
  Options o;

  auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "Tile set file")->required()->check(CLI::ExistingFile); };
  auto add_mode = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--mode", o.mode, "Reduction: c1 or c2")->check(CLI::IsMember({"c1", "c2"}));
    if (required) opt->default_str("c1");
  };
  auto add_region = [&](CLI::App* c) {
    c->add_option("--width", o.width, "Region width")->check(CLI::PositiveNumber);
    c->add_option("--height", o.height, "Region height")->check(CLI::PositiveNumber);
    c->add_option("--depth", o.depth, "Region depth (cubic lattice)")->check(CLI::PositiveNumber);
    c->add_flag("--torus", o.torus, "Wrap the region into a torus");
    c->add_option("--seed", o.seed, "Shuffle candidates with this seed");
    c->add_option("--node-limit", o.node_limit, "Search node budget")->check(CLI::PositiveNumber);
    c->add_option("--parallel", o.parallel, "Threads splitting the first cell")->check(CLI::PositiveNumber);
  };

  auto* counts = app.add_subcommand("counts", "Class sizes and reduced cardinalities");
  add_in(counts);

  auto* red = app.add_subcommand("reduce", "Write the reduced set");
  add_in(red);
  add_mode(red, true);
  red->add_option("--out", o.out, "Output file (default stdout)");

  auto* tile = app.add_subcommand("tile", "Search for a patch");
  add_in(tile);
  add_region(tile);
  add_mode(tile, false);
  tile->add_option("--out", o.out, "Patch file (default stdout)");
  tile->add_option("--svg", o.svg, "Also render the patch");

  auto* exhaust = app.add_subcommand("exhaust", "Exhaust k x k tori for k = 1 .. kmax");
  add_in(exhaust);
  add_mode(exhaust, false);
  exhaust->add_option("--kmax", o.kmax, "Largest torus")->check(CLI::PositiveNumber);
  exhaust->add_option("--node-limit", o.node_limit, "Node budget per torus")->check(CLI::PositiveNumber);
  exhaust->add_option("--parallel", o.parallel, "Threads splitting the first cell")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check a patch file");
  add_in(verify);
  add_mode(verify, false);
  verify->add_option("--patch", o.patch, "Patch file")->required()->check(CLI::ExistingFile);

  auto* roundtrip = app.add_subcommand("roundtrip", "Solve, encode, decode and check coronas");
  add_in(roundtrip);
  add_region(roundtrip);
  add_mode(roundtrip, true);
  roundtrip->add_option("--svg", o.svg, "Render original and encoded patch side by side");

  auto* atlas = app.add_subcommand("atlas", "Dump the derived atlas");
  add_in(atlas);
  add_mode(atlas, true);
  atlas->add_option("--out", o.out, "Output file (default stdout)");
  atlas->add_option("--cap", o.cap, "Materialization cap")->check(CLI::PositiveNumber);
  auto* imp = atlas->add_flag("--implicit", o.implicit, "Do not materialize");
  atlas->add_flag("--materialize", o.materialize, "Materialize even on the cubic lattice")->excludes(imp);

  auto* render = app.add_subcommand("render", "Render a patch file as SVG");
  add_in(render);
  add_mode(render, false);
  render->add_option("--patch", o.patch, "Patch file")->required()->check(CLI::ExistingFile);
  render->add_option("--svg", o.svg, "SVG output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*counts) return cmd_counts(o);
    if (*red) return cmd_reduce(o);
    if (*tile) return cmd_tile(o);
    if (*exhaust) return cmd_exhaust(o);
    if (*verify) return cmd_verify(o);
    if (*roundtrip) return cmd_roundtrip(o);
    if (*atlas) return cmd_atlas(o);
    if (*render) return cmd_render(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
