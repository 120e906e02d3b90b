#include "atlastile/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "atlastile/atlas.hpp"
#include "atlastile/error.hpp"

namespace atlastile {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;

struct Pt {
  double x, y;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

std::string points(const std::vector<Pt>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += num(pts[i].x) + "," + num(pts[i].y);
  }
  return s;
}

// Maps lattice coordinates of one region (or one z layer of it) to pixels.
struct Canvas {
  const RegionSpec& region;
  const RenderStyle& style;
  double ox = 0;  // pixel offset of this panel

  // Cartesian y-up coordinates of a lattice point, relative to the origin.
  Pt cart(const IVec& v) const {
    const double i = v[0] - region.origin[0];
    const double j = v[1] - region.origin[1];
    if (region.lattice == Lattice::Triangular) return {i + 0.5 * j, kSqrt3Half * j};
    return {i, j};
  }

  double height_units() const {
    return region.lattice == Lattice::Triangular ? kSqrt3Half * region.extent[1] : region.extent[1];
  }
  double width_units() const {
    return region.lattice == Lattice::Triangular ? region.extent[0] + 0.5 * region.extent[1] : region.extent[0];
  }
  double width_px() const { return width_units() * style.cell_size; }
  double height_px() const { return height_units() * style.cell_size; }

  Pt px(const Pt& c) const { return {ox + style.margin + c.x * style.cell_size, style.margin + (height_units() - c.y) * style.cell_size}; }

  // Polygon of a cell in pixels, cyclic order.
  std::vector<Pt> outline(const Cell& cell) const {
    const IVec& c = cell.coords;
    std::vector<IVec> vs;
    if (region.lattice == Lattice::Triangular) {
      vs = cell_vertices(Lattice::Triangular, cell);
    } else {
      vs = {{c[0], c[1], 0}, {c[0] + 1, c[1], 0}, {c[0] + 1, c[1] + 1, 0}, {c[0], c[1] + 1, 0}};
    }
    std::vector<Pt> out;
    for (const IVec& v : vs) out.push_back(px(cart(v)));
    return out;
  }

  // Endpoints of a facet in pixels. Cubes only have the four side facets here.
  std::pair<Pt, Pt> facet_edge(const Cell& cell, int facet) const {
    const auto o = outline(cell);
    if (region.lattice == Lattice::Triangular) return {o[(facet + 1) % 3], o[(facet + 2) % 3]};
    // outline: (0,0) (1,0) (1,1) (0,1)
    if (region.lattice == Lattice::Square) {
      static const int ends[4][2] = {{3, 2}, {1, 2}, {0, 1}, {0, 3}};  // N E S W
      return {o[ends[facet][0]], o[ends[facet][1]]};
    }
    static const int ends[4][2] = {{1, 2}, {0, 3}, {3, 2}, {0, 1}};  // X+ X- Y+ Y-
    return {o[ends[facet][0]], o[ends[facet][1]]};
  }
};

Pt centroid(const std::vector<Pt>& pts) {
  Pt c{0, 0};
  for (const Pt& p : pts) {
    c.x += p.x;
    c.y += p.y;
  }
  return {c.x / pts.size(), c.y / pts.size()};
}

Pt lerp(const Pt& a, const Pt& b, double t) { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }

std::string header(double w, double h) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" viewBox=\"0 0 "
     << num(w) << " " << num(h) << "\">\n";
  return os.str();
}

// One panel per z layer for cubes, a single panel otherwise.
int layers(const RegionSpec& r) { return r.lattice == Lattice::Cubic ? r.extent[2] : 1; }

double panel_width(const RegionSpec& r, const RenderStyle& s) {
  Canvas c{r, s};
  return c.width_px() + s.margin;
}

double drawing_width(const RegionSpec& r, const RenderStyle& s) { return layers(r) * panel_width(r, s) + s.margin; }
double drawing_height(const RegionSpec& r, const RenderStyle& s) {
  Canvas c{r, s};
  return c.height_px() + 2 * s.margin;
}

void frame(std::ostream& os, const RegionSpec& r, const RenderStyle& s, double ox) {
  for (int z = 0; z < layers(r); ++z) {
    Canvas c{r, s, ox + z * panel_width(r, s)};
    std::vector<Pt> box;
    if (r.lattice == Lattice::Triangular) {
      const IVec o = r.origin;
      for (IVec v : {IVec{o[0], o[1], 0}, IVec{o[0] + r.extent[0], o[1], 0}, IVec{o[0] + r.extent[0], o[1] + r.extent[1], 0},
                     IVec{o[0], o[1] + r.extent[1], 0}}) {
        box.push_back(c.px(c.cart(v)));
      }
    } else {
      box = {c.px({0, 0}), c.px({c.width_units(), 0}), c.px({c.width_units(), c.height_units()}), c.px({0, c.height_units()})};
    }
    os << "<polygon class=\"frame\" points=\"" << points(box) << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  }
}

// Canvas for the layer holding `cell`.
Canvas canvas_for(const RegionSpec& r, const RenderStyle& s, double ox, const Cell& cell) {
  const int z = r.lattice == Lattice::Cubic ? cell.coords[2] - r.origin[2] : 0;
  return Canvas{r, s, ox + z * panel_width(r, s)};
}

void draw_original(std::ostream& os, const TileSet& set, const Patch& patch, const RenderStyle& s, double ox) {
  const RegionSpec& r = patch.region();
  for (const Cell& cell : r.cells()) {
    const Placement* p = patch.find(cell);
    if (!p) continue;
    const Canvas c = canvas_for(r, s, ox, cell);
    const auto poly = c.outline(cell);
    const Pt mid = centroid(poly);
    const auto facets = effective_facets(*p, set);
    os << "<g class=\"tile\" data-id=\"" << set.at(p->tile).id << "\">";
    os << "<polygon points=\"" << points(poly) << "\" fill=\"#fff\" stroke=\"#333\" stroke-width=\"0.5\"/>";
    const int sides = r.lattice == Lattice::Cubic ? 4 : static_cast<int>(facets.size());
    for (int k = 0; k < sides; ++k) {
      const std::string fill = palette_colour(facets[k]);
      if (fill.empty()) continue;
      const auto [a, b] = c.facet_edge(cell, k);
      const std::vector<Pt> strip{a, b, lerp(b, mid, s.strip), lerp(a, mid, s.strip)};
      os << "<polygon points=\"" << points(strip) << "\" fill=\"" << fill << "\"/>";
    }
    if (r.lattice == Lattice::Cubic) {
      // Z+ as a disc, Z- as a diamond, both at the centre.
      const double rad = 0.12 * s.cell_size;
      if (const auto f = palette_colour(facets[4]); !f.empty()) {
        os << "<circle cx=\"" << num(mid.x - rad) << "\" cy=\"" << num(mid.y) << "\" r=\"" << num(rad) << "\" fill=\"" << f << "\"/>";
      }
      if (const auto f = palette_colour(facets[5]); !f.empty()) {
        const Pt q{mid.x + rad, mid.y};
        const std::vector<Pt> d{{q.x, q.y - rad}, {q.x + rad, q.y}, {q.x, q.y + rad}, {q.x - rad, q.y}};
        os << "<polygon points=\"" << points(d) << "\" fill=\"" << f << "\"/>";
      }
    }
    os << "</g>\n";
  }
}

void draw_reduced(std::ostream& os, const ReducedSet& red, const Patch& patch, const RenderStyle& s, double ox) {
  const RegionSpec& r = patch.region();
  for (const Cell& cell : r.cells()) {
    const Placement* p = patch.find(cell);
    if (!p) continue;
    if (p->tile < 0 || p->tile >= red.size()) throw Error("render: unknown representative index");
    const Canvas c = canvas_for(r, s, ox, cell);
    const auto poly = c.outline(cell);
    const Pt mid = centroid(poly);
    const double scale = (r.lattice == Lattice::Triangular ? 0.5 : 1.0) * s.cell_size;
    const Affine g = glyph_transform(p->orientation);
    const Affine m{scale * g[0], scale * g[1], scale * g[2], scale * g[3], mid.x, mid.y};
    os << "<g class=\"tile\" data-id=\"" << red.representatives()[p->tile].id << "\" data-element=\"" << element_code(p->orientation)
       << "\">";
    os << "<polygon points=\"" << points(poly) << "\" fill=\"" << palette_colour(static_cast<Colour>(p->tile) + 1)
       << "\" fill-opacity=\"0.35\" stroke=\"#333\" stroke-width=\"0.5\"/>";
    os << "<path d=\"" << glyph_path() << "\" transform=\"matrix(" << num(m[0]) << " " << num(m[1]) << " " << num(m[2]) << " "
       << num(m[3]) << " " << num(m[4]) << " " << num(m[5]) << ")\" fill=\"#222\"/>";
    os << "</g>\n";
  }
}

}  // namespace

std::string palette_colour(Colour c) {
  if (c == 0) return "";
  const int hue = static_cast<int>((static_cast<std::uint64_t>(c) * 137) % 360);
  const int light = 45 + static_cast<int>((c / 8) % 3) * 10;
  return "hsl(" + std::to_string(hue) + ",70%," + std::to_string(light) + "%)";
}

Affine glyph_transform(const PointOp& g) {
  // Columns of the linear map in cartesian (y up) coordinates.
  double m[2][2];
  if (g.lattice() == Lattice::Triangular) {
    // B maps axial to cartesian; the cartesian action is B A B^-1.
    const IVec a0 = g.apply({1, 0, 0});
    const IVec a1 = g.apply({0, 1, 0});
    const double A[2][2] = {{double(a0[0]), double(a1[0])}, {double(a0[1]), double(a1[1])}};
    const double B[2][2] = {{1.0, 0.5}, {0.0, kSqrt3Half}};
    const double Bi[2][2] = {{1.0, -0.5 / kSqrt3Half}, {0.0, 1.0 / kSqrt3Half}};
    double t[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t[i][j] = B[i][0] * A[0][j] + B[i][1] * A[1][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = t[i][0] * Bi[0][j] + t[i][1] * Bi[1][j];
  } else {
    // Cubes show the x/y part of the operation only.
    const IVec a0 = g.apply({1, 0, 0});
    const IVec a1 = g.apply({0, 1, 0});
    m[0][0] = a0[0];
    m[1][0] = a0[1];
    m[0][1] = a1[0];
    m[1][1] = a1[1];
  }
  // Conjugate by the y flip into SVG space.
  return {m[0][0], -m[1][0], -m[0][1], m[1][1], 0.0, 0.0};
}

const std::string& glyph_path() {
  static const std::string path =
      "M -0.150 -0.300 L 0.200 -0.300 L 0.200 -0.200 L -0.050 -0.200 L -0.050 -0.050 L 0.120 -0.050 "
      "L 0.120 0.050 L -0.050 0.050 L -0.050 0.300 L -0.150 0.300 Z";
  return path;
}

std::string render_svg(const TileSet& set, const Patch& patch, const RenderStyle& style) {
  const RegionSpec& r = patch.region();
  std::ostringstream os;
  os << header(drawing_width(r, style), drawing_height(r, style));
  frame(os, r, style, 0);
  draw_original(os, set, patch, style, 0);
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const ReducedSet& red, const Patch& patch, const RenderStyle& style) {
  const RegionSpec& r = patch.region();
  std::ostringstream os;
  os << header(drawing_width(r, style), drawing_height(r, style));
  frame(os, r, style, 0);
  draw_reduced(os, red, patch, style, 0);
  os << "</svg>\n";
  return os.str();
}

std::string render_pair(const ReducedSet& red, const Patch& patch, const RenderStyle& style) {
  const RegionSpec& r = patch.region();
  const Patch encoded = encode_patch(red, patch);
  const double w = drawing_width(r, style);
  std::ostringstream os;
  os << header(2 * w, drawing_height(r, style));
  frame(os, r, style, 0);
  draw_original(os, red.source(), patch, style, 0);
  frame(os, r, style, w);
  draw_reduced(os, red, encoded, style, w);
  os << "</svg>\n";
  return os.str();
}

}  // namespace atlastile
