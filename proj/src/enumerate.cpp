#include "hexshuffle/enumerate.hpp"

#include <cmath>

namespace hexshuffle {

double count_families_log(const BoxDims& box) {
  box.require_valid();
  const int a = box.a(), b = box.b(), c = box.c();
  double lg = 0.0;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      lg += std::log((double)(c + i + j - 1)) - std::log((double)(i + j - 1));
  return lg;
}

BigInt count_families_exact(const BoxDims& box) {
  box.require_valid();
  const int a = box.a(), b = box.b(), c = box.c();
  Rat count(1);
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j) count *= Rat(c + i + j - 1, i + j - 1);
  if (boost::multiprecision::denominator(count) != 1)
    throw std::logic_error("count product did not reduce to an integer");
  return boost::multiprecision::numerator(count);
}

std::vector<SectionState> successor_rows(const BoxDims& box, int t, const SectionState& x) {
  const SectionDomain next = section_domain(box, t + 1);
  const int n = box.N;
  std::vector<SectionState> out;
  SectionState y((size_t)n);
  // ascending choice vectors, first path most significant, give rows in
  // lexicographic order
  for (unsigned long long m = 0; m < (1ULL << n); ++m) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      y[i] = x[i] + (int)((m >> (n - 1 - i)) & 1ULL);
      if (!next.contains(y[i]) || (i > 0 && y[i - 1] >= y[i])) ok = false;
    }
    if (ok) out.push_back(y);
  }
  return out;
}

namespace {

void extend(const BoxDims& box, PathFamily& partial, int t, std::vector<PathFamily>& out) {
  if (t == box.T) {
    out.push_back(partial);
    return;
  }
  SectionState x(partial.row(t), partial.row(t) + box.N);
  for (const SectionState& y : successor_rows(box, t, x)) {
    for (int i = 0; i < box.N; ++i) partial.at(t + 1, i) = y[i];
    extend(box, partial, t + 1, out);
  }
}

}  // namespace

std::vector<PathFamily> enumerate_families(const BoxDims& box, double cap) {
  box.require_valid();
  if (box.N > 60) throw std::invalid_argument("too many paths to enumerate");
  const double est = std::exp(count_families_log(box));
  if (est > cap) throw CapExceeded(est);
  std::vector<PathFamily> out;
  out.reserve((size_t)(est + 1));
  PathFamily partial(box);
  for (int i = 0; i < box.N; ++i) partial.at(0, i) = i;
  extend(box, partial, 0, out);
  return out;
}

std::vector<SectionState> enumerate_sections(const BoxDims& box, int t, double cap) {
  const SectionDomain dom = section_domain(box, t);
  const int n = box.N, m = dom.size();
  if (m < n) throw std::logic_error("section smaller than path count");
  double est = 1.0;
  for (int j = 0; j < n; ++j) est *= (double)(m - j) / (double)(j + 1);
  if (est > cap) throw CapExceeded(est);
  std::vector<SectionState> out;
  SectionState pick((size_t)n);
  // lexicographically ordered combinations dom.lo..dom.hi choose n
  for (int i = 0; i < n; ++i) pick[i] = dom.lo + i;
  for (;;) {
    out.push_back(pick);
    int i = n - 1;
    while (i >= 0 && pick[i] == dom.hi - (n - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace hexshuffle
