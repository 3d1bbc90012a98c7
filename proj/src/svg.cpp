#include "hexshuffle/svg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace hexshuffle {

namespace {

const double kRoot3Half = std::sqrt(3.0) / 2.0;

struct Pt {
  double u, v;
};

// lattice (t, x) -> plane, before the y-flip to pixel coordinates
Pt embed(double t, double x) { return {t * kRoot3Half, x - 0.5 * t}; }

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3f", v);
  std::string s = b;
  if (s == "-0.000") s = "0.000";  // keep outputs byte-stable around zero
  return s;
}

struct Canvas {
  double edge, pad, vmax, height, width;

  std::string px(const Pt& p) const {
    return fmt(pad + p.u * edge) + "," + fmt(pad + (vmax - p.v) * edge);
  }
};

void polygon(std::ostream& os, const Canvas& c, const Pt* pts, int n, const std::string& fill,
             const std::string& stroke, double stroke_w) {
  os << "<polygon points=\"";
  for (int i = 0; i < n; ++i) os << (i ? " " : "") << c.px(pts[i]);
  os << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
     << fmt(stroke_w) << "\"/>\n";
}

}  // namespace

void render_svg(std::ostream& os, const LozengeTiling& tiling, const SvgOptions& opt) {
  const int N = tiling.box.N, T = tiling.box.T, S = tiling.box.S;
  Canvas c;
  c.edge = opt.edge;
  c.pad = 0.5 * opt.edge;
  const double vmin = -0.5 - 0.5 * (T - S);
  c.vmax = N - 0.5 + 0.5 * S;
  c.width = T * kRoot3Half * opt.edge + 2.0 * c.pad;
  c.height = (c.vmax - vmin) * opt.edge + 2.0 * c.pad;
  const double stroke_w = opt.edge / 24.0;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(c.width) << "\" height=\""
     << fmt(c.height) << "\" viewBox=\"0 0 " << fmt(c.width) << " " << fmt(c.height) << "\">\n";
  os << "<!-- lozenge tiling of the " << (T - S) << "," << S << "," << N << " hexagon: "
     << tiling.lozenges.size() << " lozenges -->\n";

  size_t stride = 1;
  if (tiling.lozenges.size() > opt.max_lozenges && opt.max_lozenges > 0) {
    stride = (tiling.lozenges.size() + opt.max_lozenges - 1) / opt.max_lozenges;
    os << "<!-- thinned: drawing every " << stride << "-th lozenge -->\n";
  }

  for (size_t idx = 0; idx < tiling.lozenges.size(); idx += stride) {
    const Lozenge& lz = tiling.lozenges[idx];
    Pt quad[4];
    if (lz.orient == Orient::horizontal) {
      const Pt ctr = embed(lz.t, lz.x);
      quad[0] = {ctr.u + kRoot3Half, ctr.v};
      quad[1] = {ctr.u, ctr.v + 0.5};
      quad[2] = {ctr.u - kRoot3Half, ctr.v};
      quad[3] = {ctr.u, ctr.v - 0.5};
    } else {
      const double rise = lz.orient == Orient::rising ? 1.0 : 0.0;
      const Pt ctr = embed(lz.t + 0.5, lz.x + 0.5 * rise);
      const Pt d1 = {kRoot3Half, 0.5 * (rise == 1.0 ? 1.0 : -1.0)};  // step direction
      quad[0] = {ctr.u + 0.5 * d1.u, ctr.v + 0.5 * d1.v + 0.5};
      quad[1] = {ctr.u + 0.5 * d1.u, ctr.v + 0.5 * d1.v - 0.5};
      quad[2] = {ctr.u - 0.5 * d1.u, ctr.v - 0.5 * d1.v - 0.5};
      quad[3] = {ctr.u - 0.5 * d1.u, ctr.v - 0.5 * d1.v + 0.5};
    }
    polygon(os, c, quad, 4, opt.fill[(int)lz.orient], opt.stroke, stroke_w);
  }

  if (opt.draw_paths) {
    const double w = 3.0 * stroke_w;
    for (size_t idx = 0; idx < tiling.lozenges.size(); ++idx) {
      const Lozenge& lz = tiling.lozenges[idx];
      if (lz.orient == Orient::horizontal) continue;
      const Pt a = embed(lz.t, lz.x);
      const Pt b = embed(lz.t + 1, lz.x + (lz.orient == Orient::rising ? 1 : 0));
      os << "<line x1=\"" << fmt(c.pad + a.u * c.edge) << "\" y1=\""
         << fmt(c.pad + (c.vmax - a.v) * c.edge) << "\" x2=\"" << fmt(c.pad + b.u * c.edge)
         << "\" y2=\"" << fmt(c.pad + (c.vmax - b.v) * c.edge)
         << "\" stroke=\"#000000\" stroke-width=\"" << fmt(w) << "\"/>\n";
    }
  }

  if (opt.draw_outline) {
    const Pt corners[6] = {embed(0, -0.5),         embed(0, N - 0.5),
                           embed(S, S + N - 0.5),  embed(T, S + N - 0.5),
                           embed(T, S - 0.5),      embed(T - S, -0.5)};
    os << "<polygon points=\"";
    for (int i = 0; i < 6; ++i) os << (i ? " " : "") << c.px(corners[i]);
    os << "\" fill=\"none\" stroke=\"" << opt.stroke << "\" stroke-width=\""
       << fmt(2.0 * stroke_w) << "\"/>\n";
  }

  os << "</svg>\n";
}

std::string render_svg(const LozengeTiling& tiling, const SvgOptions& opt) {
  std::ostringstream os;
  render_svg(os, tiling, opt);
  return os.str();
}

}  // namespace hexshuffle
