// The four one-step stochastic matrices acting on sections, their
// two-diagonal building blocks, and the determinantal form connecting them.
//
// Each direction moves one of the two indices of the section family:
//   t_plus : (S,t) -> (S,t+1), per-path rise 0/+1
//   t_minus: (S,t) -> (S,t-1), per-path move -1/0
//   s_plus : (S,t) -> (S+1,t), per-path rise 0/+1
//   s_minus: (S,t) -> (S-1,t), per-path move -1/0
// All four share the Vandermonde-ratio prefactor and differ only in the
// per-path factor tables below.  A box value always carries the *source* S.
#pragma once

#include "hexshuffle/measure.hpp"
#include "hexshuffle/types.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace hexshuffle {

enum class Direction { t_plus, t_minus, s_plus, s_minus };

inline const char* direction_name(Direction d) {
  switch (d) {
    case Direction::t_plus: return "t+";
    case Direction::t_minus: return "t-";
    case Direction::s_plus: return "s+";
    default: return "s-";
  }
}

// per-path displacement y - x allowed by the direction: {delta0, delta0+1}
inline int min_delta(Direction d) {
  return d == Direction::t_plus || d == Direction::s_plus ? 0 : -1;
}

struct StepTarget {
  int S, t;
};

inline StepTarget step_target(const BoxDims& box, int t, Direction d) {
  switch (d) {
    case Direction::t_plus: return {box.S, t + 1};
    case Direction::t_minus: return {box.S, t - 1};
    case Direction::s_plus: return {box.S + 1, t};
    default: return {box.S - 1, t};
  }
}

inline void require_step_valid(const BoxDims& box, int t, Direction d) {
  box.require_valid();
  if (t < 0 || t > box.T) throw std::invalid_argument("section position out of range");
  const StepTarget tgt = step_target(box, t, d);
  if (tgt.t < 0 || tgt.t > box.T || tgt.S < 0 || tgt.S > box.T)
    throw std::invalid_argument(std::string("step ") + direction_name(d) +
                                " leaves the parameter range");
}

// Entries of the two-diagonal matrix U for one direction; zero off the two
// diagonals and outside the source/target sections.
template <typename Scalar>
Scalar u_entry(const BoxDims& box, int t, Direction d, int x, int y) {
  const int N = box.N, T = box.T, S = box.S;
  const StepTarget tgt = step_target(box, t, d);
  if (!section_domain(box, t).contains(x)) return Scalar(0);
  if (!section_domain({N, T, tgt.S}, tgt.t).contains(y)) return Scalar(0);
  switch (d) {
    case Direction::t_plus:
      if (y == x + 1) return Scalar(N + S - 1 - x);
      if (y == x) return Scalar(T - t - S + x);
      return Scalar(0);
    case Direction::s_plus:
      if (y == x + 1) return Scalar(N + t - 1 - x);
      if (y == x) return Scalar(T - t - S + x);
      return Scalar(0);
    case Direction::t_minus:
      if (y == x - 1) return Scalar(x);
      if (y == x) return Scalar(t + N - 1 - x);
      return Scalar(0);
    default:  // s_minus
      if (y == x - 1) return Scalar(x);
      if (y == x) return Scalar(S + N - 1 - x);
      return Scalar(0);
  }
}

// Entries of the combined two-step matrix U^{S,t}_{t+} U^{S,t+1}_{s-}
// (= U^{S,t}_{s-} U^{S-1,t}_{t+}); three diagonals.
template <typename Scalar>
Scalar u_tplus_sminus_entry(const BoxDims& box, int t, int x, int y) {
  const int N = box.N, T = box.T, S = box.S;
  if (y == x + 1) return Scalar(N + S - 1 - x) * Scalar(N + S - 2 - x);
  if (y == x) return Scalar(N + S - 1 - x) * Scalar(T - t - S + 2 * x + 1);
  if (y == x - 1) return Scalar(x) * Scalar(T - t - S + x);
  return Scalar(0);
}

// denominator (a)_N of the direction's transition matrix
template <typename Scalar>
Scalar transition_denominator(const BoxDims& box, int t, Direction d) {
  switch (d) {
    case Direction::t_plus: return pochhammer<Scalar>(box.T - t, box.N);
    case Direction::s_plus: return pochhammer<Scalar>(box.T - box.S, box.N);
    case Direction::t_minus: return pochhammer<Scalar>(t, box.N);
    default: return pochhammer<Scalar>(box.S, box.N);
  }
}

// P^{S,t}_d(X, Y); zero whenever Y is not reachable from X
template <typename Scalar>
Scalar transition_prob(const BoxDims& box, int t, Direction d, const std::vector<int>& x,
                       const std::vector<int>& y) {
  require_step_valid(box, t, d);
  const int N = box.N, T = box.T, S = box.S;
  if ((int)x.size() != N || (int)y.size() != N)
    throw std::invalid_argument("section tuple has wrong length");
  const StepTarget tgt = step_target(box, t, d);
  const SectionDomain tgt_dom = section_domain({N, T, tgt.S}, tgt.t);
  const int d0 = min_delta(d);
  Scalar numer(1);
  for (int i = 0; i < N; ++i) {
    const int delta = y[i] - x[i];
    if (delta != d0 && delta != d0 + 1) return Scalar(0);
    if (!tgt_dom.contains(y[i])) return Scalar(0);
    switch (d) {
      case Direction::t_plus:
        numer *= delta == 1 ? Scalar(N + S - 1 - x[i]) : Scalar(T - t - S + x[i]);
        break;
      case Direction::s_plus:
        numer *= delta == 1 ? Scalar(N + t - 1 - x[i]) : Scalar(T - t - S + x[i]);
        break;
      case Direction::t_minus:
        numer *= delta == -1 ? Scalar(x[i]) : Scalar(t + N - 1 - x[i]);
        break;
      default:
        numer *= delta == -1 ? Scalar(x[i]) : Scalar(S + N - 1 - x[i]);
        break;
    }
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      numer *= Scalar(y[j] - y[i]);
      numer /= Scalar(x[j] - x[i]);
    }
  return numer / transition_denominator<Scalar>(box, t, d);
}

namespace detail {

// dense determinant with partial pivoting; works for double and for exact
// scalars (pivot choice by magnitude is just a permutation there)
template <typename Scalar>
Scalar det_dense(std::vector<Scalar> m, int n) {
  using std::abs;
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[(size_t)r * n + c] != Scalar(0) &&
          (piv < 0 || abs(m[(size_t)r * n + c]) > abs(m[(size_t)piv * n + c])))
        piv = r;
    if (piv < 0) return Scalar(0);
    if (piv != c) {
      for (int j = c; j < n; ++j) std::swap(m[(size_t)piv * n + j], m[(size_t)c * n + j]);
      det = -det;
    }
    const Scalar p = m[(size_t)c * n + c];
    det *= p;
    for (int r = c + 1; r < n; ++r) {
      const Scalar f = m[(size_t)r * n + c] / p;
      if (f == Scalar(0)) continue;
      for (int j = c; j < n; ++j) m[(size_t)r * n + j] -= f * m[(size_t)c * n + j];
    }
  }
  return det;
}

}  // namespace detail

// transition probability through det[U(x_i, y_j)]; equal to transition_prob
// whenever the latter is nonzero, and handles the same zero cases through the
// vanishing minor
template <typename Scalar>
Scalar det_representation(const BoxDims& box, int t, Direction d, const std::vector<int>& x,
                          const std::vector<int>& y) {
  require_step_valid(box, t, d);
  const int N = box.N;
  std::vector<Scalar> m((size_t)N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m[(size_t)i * N + j] = u_entry<Scalar>(box, t, d, x[i], y[j]);
  Scalar r = detail::det_dense<Scalar>(std::move(m), N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      r *= Scalar(y[j] - y[i]);
      r /= Scalar(x[j] - x[i]);
    }
  return r / transition_denominator<Scalar>(box, t, d);
}

}  // namespace hexshuffle
