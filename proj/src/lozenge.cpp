#include "hexshuffle/lozenge.hpp"

#include <stdexcept>

namespace hexshuffle {

LozengeTiling to_lozenges(const PathFamily& family) {
  const ValidationReport rep = validate(family);
  if (!rep.ok) throw std::invalid_argument("to_lozenges: " + rep.reason);
  const BoxDims& box = family.box;
  LozengeTiling tiling{box, {}};
  tiling.lozenges.reserve((size_t)box.N * box.T + (size_t)box.S * (box.T - box.S));
  for (int t = 0; t <= box.T; ++t) {
    const SectionDomain dom = section_domain(box, t);
    // walk section points and paths together; unoccupied points carry the
    // horizontal lozenges straddling this section line
    int i = 0;
    for (int x = dom.lo; x <= dom.hi; ++x) {
      if (i < box.N && family.at(t, i) == x) {
        if (t < box.T) {
          const Orient o = family.at(t + 1, i) == x ? Orient::flat : Orient::rising;
          tiling.lozenges.push_back({o, t, x});
        }
        ++i;
      } else {
        tiling.lozenges.push_back({Orient::horizontal, t, x});
      }
    }
    if (i != box.N) throw std::logic_error("path heights left the section domain");
  }
  return tiling;
}

}  // namespace hexshuffle
