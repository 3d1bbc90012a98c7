// Exact rational scalar type plus the handful of combinatorial primitives
// (factorials, rising factorials, binomials) used by the measure and
// transition-matrix formulas.  Everything is templated on the scalar so the
// same formula code runs both in exact arithmetic and in double.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexshuffle {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& q) {
  // "p/q" with q omitted when 1; stable across platforms, used in golden files
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(BigInt(s));
  return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

template <typename Scalar>
Scalar factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative argument");
  Scalar r(1);
  for (int k = 2; k <= n; ++k) r *= Scalar(k);
  return r;
}

// rising factorial (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1
template <typename Scalar>
Scalar pochhammer(long long a, int k) {
  Scalar r(1);
  for (int j = 0; j < k; ++j) r *= Scalar(a + j);
  return r;
}

template <typename Scalar>
Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  Scalar r(1);
  for (int j = 1; j <= k; ++j) {
    r *= Scalar(n - k + j);
    r /= Scalar(j);
  }
  return r;
}

// Cached log n!; grows on demand.  Plenty accurate for the sizes we ever
// exponentiate (lgamma is exact to ~1ulp and we only take ratios).
inline double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial of negative argument");
  static thread_local std::vector<double> table{0.0, 0.0};
  while ((int)table.size() <= n) table.push_back(table.back() + std::log((double)table.size()));
  return table[n];
}

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

}  // namespace hexshuffle
