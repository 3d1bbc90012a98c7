// Bijection from path families to lozenge tilings of the hexagon.
//
// Orientation convention (also the one the SVG renderer draws): embed lattice
// point (t, x) at the plane point ( t*sqrt(3)/2, x - t/2 ).  Then
//   * a flat path step t -> t+1 at height x is covered by the rhombus spanned
//     by (sqrt3/2,-1/2) and (0,1), centered on the step  -> Orient::flat;
//   * a rising step from (t,x) to (t+1,x+1) is covered by the rhombus spanned
//     by (sqrt3/2,+1/2) and (0,1)                        -> Orient::rising;
//   * every section point not occupied by a path carries a "wide" rhombus
//     spanned by both diagonal vectors, centered at (t,x) -> Orient::horizontal.
// Together these tile the hexagon: counts are N*(T-S) = c*a flat, N*S = c*b
// rising and S*(T-S) = a*b horizontal lozenges.
#pragma once

#include "hexshuffle/path_family.hpp"

#include <cstdint>
#include <vector>

namespace hexshuffle {

enum class Orient : std::uint8_t { flat = 0, rising = 1, horizontal = 2 };

struct Lozenge {
  Orient orient;
  int t;  // flat/rising: left end of the step; horizontal: section position
  int x;  // flat/rising: height at the left end; horizontal: unoccupied height
};

struct LozengeTiling {
  BoxDims box;
  std::vector<Lozenge> lozenges;  // sorted by (t, x, orient)
};

LozengeTiling to_lozenges(const PathFamily& family);

}  // namespace hexshuffle
