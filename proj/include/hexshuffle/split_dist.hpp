// The two-parameter split law on {0..n}:  Prob{k} proportional to
// (a)_k / (b)_k  (rising factorials).  Weight ratios (a+k)/(b+k) are monotone
// in one direction, so the weight table is always built starting from its
// largest entry; that keeps everything in double range for any parameters.
#pragma once

#include "hexshuffle/rational.hpp"
#include "hexshuffle/rng.hpp"

#include <cassert>
#include <vector>

namespace hexshuffle {

struct SplitDistribution {
  long long a = 0;  // a >= 0; a = 0 pins the outcome to 0
  long long b = 1;  // b >= 1
  int n = 0;

  // Inverse-CDF draw; consumes exactly one uniform from rng.  `scratch` only
  // grows, so a reused buffer makes repeated draws allocation-free.
  //
  // n = 1 and n = 2 dominate in the sweeps, so they are unrolled below; their
  // arithmetic mirrors the table path operation for operation, keeping the
  // u -> k mapping bit-identical to it for any seed.
  int sample(RandomSource& rng, std::vector<double>& scratch) const {
    assert(a >= 0 && b >= 1 && n >= 0);
    const double u = rng.next_unit();
    if (n == 0) return 0;
    if (n == 1) {
      if (a >= b) {
        const double w0 = (double)b / (double)a;
        return u * (1.0 + w0) < 1.0 ? 1 : 0;
      }
      const double w1 = (double)a / (double)b;
      return u * (1.0 + w1) < 1.0 ? 0 : 1;
    }
    if (n == 2) {
      if (a >= b) {
        const double w1 = (double)(b + 1) / (double)(a + 1);
        const double w0 = w1 * ((double)b / (double)a);
        const double target = u * ((1.0 + w1) + w0);
        if (target < 1.0) return 2;
        if (target < 1.0 + w1) return 1;
        return 0;
      }
      const double w1 = (double)a / (double)b;
      const double w2 = w1 * ((double)(a + 1) / (double)(b + 1));
      const double target = u * ((1.0 + w1) + w2);
      if (target < 1.0) return 0;
      if (target < 1.0 + w1) return 1;
      return 2;
    }
    if ((size_t)n + 1 > scratch.size()) scratch.resize((size_t)n + 1);
    double total = 0.0;
    if (a >= b) {  // weights peak at k = n; fill downward
      double w = 1.0;
      for (int k = n; k >= 0; --k) {
        scratch[k] = w;
        total += w;
        if (k > 0) w *= (double)(b + k - 1) / (double)(a + k - 1);
      }
      double acc = 0.0;
      const double target = u * total;
      for (int k = n; k > 0; --k) {
        acc += scratch[k];
        if (target < acc) return k;
      }
      return 0;
    }
    double w = 1.0;  // weights peak at k = 0; fill upward
    for (int k = 0; k <= n; ++k) {
      scratch[k] = w;
      total += w;
      w *= (double)(a + k) / (double)(b + k);
    }
    double acc = 0.0;
    const double target = u * total;
    for (int k = 0; k < n; ++k) {
      acc += scratch[k];
      if (target < acc) return k;
    }
    return n;
  }

  template <typename Scalar>
  Scalar pmf(int k) const {
    Scalar total(0);
    for (int j = 0; j <= n; ++j)
      total += pochhammer<Scalar>(a, j) / pochhammer<Scalar>(b, j);
    return pochhammer<Scalar>(a, k) / pochhammer<Scalar>(b, k) / total;
  }
};

}  // namespace hexshuffle
