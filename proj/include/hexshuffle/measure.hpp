// The fixed-section law of a uniformly random path family:
//   rho_{S,t}(Y) = Z_{S,t} * prod_{i<j} (y_i-y_j)^2 * prod_i w_{S,t}(y_i)
// with the four-factorial weight w and a closed-form normalization Z.
// Formulas are templated on the scalar; use Rat for exact identities and the
// log_* variants when doubles would under/overflow.
#pragma once

#include "hexshuffle/rational.hpp"
#include "hexshuffle/types.hpp"

#include <cmath>
#include <vector>

namespace hexshuffle {

// w_{S,t}(x) = 1 / ( x! (t+N-1-x)! (S+N-1-x)! (T-t-S+x)! ) on the section
template <typename Scalar>
Scalar weight(const BoxDims& box, int t, int x) {
  const int N = box.N, T = box.T, S = box.S;
  Scalar denom = factorial<Scalar>(x);
  denom *= factorial<Scalar>(t + N - 1 - x);
  denom *= factorial<Scalar>(S + N - 1 - x);
  denom *= factorial<Scalar>(T - t - S + x);
  return Scalar(1) / denom;
}

inline double log_weight(const BoxDims& box, int t, int x) {
  const int N = box.N, T = box.T, S = box.S;
  return -log_factorial(x) - log_factorial(t + N - 1 - x) - log_factorial(S + N - 1 - x) -
         log_factorial(T - t - S + x);
}

// Z_{S,t}: normalizes rho to a probability on increasing N-tuples
template <typename Scalar>
Scalar normalization(const BoxDims& box, int t) {
  const int N = box.N, T = box.T, S = box.S;
  Scalar z(1);
  for (int i = 1; i <= N; ++i) {
    z *= pochhammer<Scalar>(t + 1, i - 1);
    z *= pochhammer<Scalar>(T - t + 1, i - 1);
    z *= factorial<Scalar>(S - i + N);
    z *= factorial<Scalar>(T - S + i - 1);
    z /= pochhammer<Scalar>(T + 1, i - 1);
    z /= factorial<Scalar>(i - 1);
  }
  Scalar middle = factorial<Scalar>(t) * factorial<Scalar>(T - t) / factorial<Scalar>(T);
  for (int i = 0; i < N; ++i) z *= middle;
  return z;
}

inline double log_pochhammer(long long a, int k) {
  double r = 0.0;
  for (int j = 0; j < k; ++j) r += std::log((double)(a + j));
  return r;
}

inline double log_normalization(const BoxDims& box, int t) {
  const int N = box.N, T = box.T, S = box.S;
  double lz = 0.0;
  for (int i = 1; i <= N; ++i) {
    lz += log_pochhammer(t + 1, i - 1) + log_pochhammer(T - t + 1, i - 1);
    lz += log_factorial(S - i + N) + log_factorial(T - S + i - 1);
    lz -= log_pochhammer(T + 1, i - 1) + log_factorial(i - 1);
  }
  lz += (double)N * (log_factorial(t) + log_factorial(T - t) - log_factorial(T));
  return lz;
}

template <typename Scalar>
Scalar rho(const BoxDims& box, int t, const std::vector<int>& y) {
  Scalar r = normalization<Scalar>(box, t);
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j) {
      const Scalar d((long long)y[i] - y[j]);
      r *= d * d;
    }
  for (int yi : y) r *= weight<Scalar>(box, t, yi);
  return r;
}

inline double log_rho(const BoxDims& box, int t, const std::vector<int>& y) {
  double lr = log_normalization(box, t);
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j)
      lr += 2.0 * std::log((double)std::abs(y[i] - y[j]));
  for (int yi : y) lr += log_weight(box, t, yi);
  return lr;
}

}  // namespace hexshuffle
