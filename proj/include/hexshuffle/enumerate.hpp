// Brute-force enumeration of complete path families and of single sections,
// plus the closed-form count used to refuse hopeless requests up front.
#pragma once

#include "hexshuffle/path_family.hpp"
#include "hexshuffle/rational.hpp"

#include <stdexcept>
#include <vector>

namespace hexshuffle {

struct CapExceeded : std::runtime_error {
  double estimate;
  explicit CapExceeded(double est)
      : std::runtime_error("enumeration refused: estimated " + std::to_string(est) +
                           " families exceeds cap"),
        estimate(est) {}
};

// log of the number of families, from the classical boxed product formula
//   count = prod_{i<=a} prod_{j<=b} (c+i+j-1)/(i+j-1).
double count_families_log(const BoxDims& box);

// Exact count via the same product (bignum; fine for moderate boxes).
BigInt count_families_exact(const BoxDims& box);

// All families in lexicographic order of their concatenated height rows.
// Throws CapExceeded when the closed-form count is above `cap`.
std::vector<PathFamily> enumerate_families(const BoxDims& box, double cap = 1e6);

// All strictly increasing N-tuples in the section at position t, in
// lexicographic order.
std::vector<SectionState> enumerate_sections(const BoxDims& box, int t, double cap = 1e6);

// Rows reachable from X in one position step (per-path rise of 0 or 1, staying
// inside the section at t+1), in lexicographic order.
std::vector<SectionState> successor_rows(const BoxDims& box, int t, const SectionState& x);

}  // namespace hexshuffle
