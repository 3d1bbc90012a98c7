#include "hexshuffle/path_family.hpp"

namespace hexshuffle {

PathFamily lowest_family(const BoxDims& box) {
  PathFamily f(box);
  for (int t = 0; t <= box.T; ++t) {
    const int rise = t - (box.T - box.S);  // forced rises so far
    for (int i = 0; i < box.N; ++i) f.at(t, i) = i + (rise > 0 ? rise : 0);
  }
  return f;
}

PathFamily highest_family(const BoxDims& box) {
  PathFamily f(box);
  for (int t = 0; t <= box.T; ++t) {
    const int rise = t < box.S ? t : box.S;
    for (int i = 0; i < box.N; ++i) f.at(t, i) = i + rise;
  }
  return f;
}

ValidationReport validate(const PathFamily& family) {
  ValidationReport rep;
  const BoxDims& box = family.box;
  if (!box.valid()) {
    rep.ok = false;
    rep.reason = "invalid dimensions";
    return rep;
  }
  if (family.heights.size() != (size_t)(box.T + 1) * box.N) {
    rep.ok = false;
    rep.reason = "height storage has wrong shape";
    return rep;
  }
  for (int t = 0; t <= box.T; ++t) {
    const SectionDomain dom = section_domain(box, t);
    for (int i = 0; i < box.N; ++i) {
      const int x = family.at(t, i);
      if (!dom.contains(x)) {
        rep = {false, t, i, "height outside section domain"};
        return rep;
      }
      if (i > 0 && family.at(t, i - 1) >= x) {
        rep = {false, t, i, "section heights not strictly increasing"};
        return rep;
      }
      if (t > 0) {
        const int step = x - family.at(t - 1, i);
        if (step != 0 && step != 1) {
          rep = {false, t, i, "step is not flat or unit rise"};
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace hexshuffle
