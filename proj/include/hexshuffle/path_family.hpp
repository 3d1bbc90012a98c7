// Path-family state: the heights of N nonintersecting paths at every
// horizontal position 0..T, stored densely row by row.
#pragma once

#include "hexshuffle/types.hpp"

#include <string>
#include <vector>

namespace hexshuffle {

// Strictly increasing heights of the N paths at one horizontal position.
using SectionState = std::vector<int>;

struct PathFamily {
  BoxDims box;
  std::vector<int> heights;  // (T+1) rows of N ints, row t = heights at position t

  PathFamily() = default;
  explicit PathFamily(const BoxDims& b) : box(b), heights((size_t)(b.T + 1) * b.N, 0) {
    b.require_valid();
  }

  int at(int t, int i) const { return heights[(size_t)t * box.N + i]; }
  int& at(int t, int i) { return heights[(size_t)t * box.N + i]; }
  const int* row(int t) const { return heights.data() + (size_t)t * box.N; }
  int* row(int t) { return heights.data() + (size_t)t * box.N; }

  SectionState section(int t) const { return SectionState(row(t), row(t) + box.N); }
};

// All paths rise as late as possible (path i sits at height i-1 until forced up).
PathFamily lowest_family(const BoxDims& box);
// All paths rise as early as possible.
PathFamily highest_family(const BoxDims& box);

struct ValidationReport {
  bool ok = true;
  int t = -1;       // position of the first offending entry
  int i = -1;       // path index of the first offending entry
  std::string reason;
};

// Checks storage shape, per-section domains, strict increase within each
// section and unit steps along each path.  Endpoint pinning follows from
// those constraints.  Reports the first offending (t, i).
ValidationReport validate(const PathFamily& family);

}  // namespace hexshuffle
