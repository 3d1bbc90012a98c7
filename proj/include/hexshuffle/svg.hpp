// Deterministic SVG rendering of lozenge tilings: same tiling, same bytes.
// Coordinates are printed with fixed precision and lozenges in their sorted
// order, so outputs are stable across platforms and suitable for golden-file
// comparison.
#pragma once

#include "hexshuffle/lozenge.hpp"

#include <iosfwd>
#include <string>

namespace hexshuffle {

struct SvgOptions {
  double edge = 24.0;          // pixels per lattice unit
  bool draw_paths = false;     // overlay the nonintersecting paths
  bool draw_outline = true;    // hexagon boundary
  // tilings with more lozenges than this are thinned to every k-th lozenge
  // (k chosen to land under the cap) and a comment noting it is emitted
  std::size_t max_lozenges = 2'000'000;
  // fill colors by orientation: flat, rising, horizontal
  std::string fill[3] = {"#4e79a7", "#f28e2b", "#e8e8e8"};
  std::string stroke = "#303030";
};

void render_svg(std::ostream& os, const LozengeTiling& tiling, const SvgOptions& opt = {});

std::string render_svg(const LozengeTiling& tiling, const SvgOptions& opt = {});

}  // namespace hexshuffle
