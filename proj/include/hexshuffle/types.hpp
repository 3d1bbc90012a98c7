// Basic dimensions and per-section height domains for families of
// nonintersecting up/flat lattice paths across a hexagon.
#pragma once

#include <stdexcept>
#include <string>

namespace hexshuffle {

// Hexagon with side lengths a = T-S, b = S, c = N, described through the path
// picture: N paths take T unit steps each (flat or rising), every path rising
// S times in total.  Path i runs from height i-1 at position 0 to height
// S+i-1 at position T.
struct BoxDims {
  int N = 1;  // number of paths
  int T = 1;  // steps per path
  int S = 0;  // rises per path, 0 <= S <= T

  int a() const { return T - S; }
  int b() const { return S; }
  int c() const { return N; }

  bool valid() const { return N >= 1 && T >= 1 && S >= 0 && S <= T; }

  void require_valid() const {
    if (!valid())
      throw std::invalid_argument("invalid dimensions: need N>=1, T>=1, 0<=S<=T (got N=" +
                                  std::to_string(N) + " T=" + std::to_string(T) + " S=" +
                                  std::to_string(S) + ")");
  }

  bool operator==(const BoxDims& o) const { return N == o.N && T == o.T && S == o.S; }
};

// Closed integer interval of admissible path heights at horizontal position t.
struct SectionDomain {
  int lo = 0;
  int hi = -1;

  int size() const { return hi - lo + 1; }
  bool contains(int x) const { return lo <= x && x <= hi; }
  bool operator==(const SectionDomain& o) const { return lo == o.lo && hi == o.hi; }
};

// Heights reachable at position t: max(0, t+S-T) <= x <= min(t+N-1, S+N-1).
inline SectionDomain section_domain(const BoxDims& box, int t) {
  box.require_valid();
  if (t < 0 || t > box.T) throw std::invalid_argument("section position out of range");
  SectionDomain d;
  d.lo = t + box.S - box.T;
  if (d.lo < 0) d.lo = 0;
  d.hi = t + box.N - 1;
  if (box.S + box.N - 1 < d.hi) d.hi = box.S + box.N - 1;
  return d;
}

// |section| = N + min(t, S, T-t, T-S); every section holds at least N points.
inline int section_size(const BoxDims& box, int t) { return section_domain(box, t).size(); }

}  // namespace hexshuffle
