// Orthonormal basis of the section weight: the functions
//   Psi_k(x) = p_k(x) sqrt(w(x)),   k = 0 .. m-1,
// where p_k are the orthonormal polynomials of the discrete weight w on the
// m-point section (a Hahn-type weight) and the sign convention gives every
// p_k a positive leading coefficient.
//
// The table is built by tridiagonalizing the multiplication-by-x operator
// against the starting vector sqrt(w)/||sqrt(w)|| (discrete Stieltjes, i.e.
// Lanczos with full reorthogonalization).  That route only ever touches
// ratios of neighbouring weights, so it stays stable where the three-term
// recurrence coefficients in closed form would hit poles.  Weights are taken
// in log form first; far-tail entries may underflow to zero, which perturbs
// the measure by amounts far below double precision.
#pragma once

#include "hexshuffle/types.hpp"

#include <Eigen/Dense>

namespace hexshuffle {

class HahnBasis {
 public:
  // Throws std::runtime_error if the resulting table fails the Gram identity
  // max |Psi^T Psi - I| < 1e-8 (it sits near machine precision in practice).
  HahnBasis(const BoxDims& box, int t);

  int size() const { return (int)psi_.cols(); }
  const SectionDomain& domain() const { return dom_; }

  // Psi_k at absolute height x; zero outside the section or for k >= size().
  double psi(int k, int x) const {
    if (k < 0 || k >= size() || !dom_.contains(x)) return 0.0;
    return psi_(x - dom_.lo, k);
  }

  // column k as a vector over the section points
  Eigen::VectorXd column(int k) const { return psi_.col(k); }

  double gram_error() const { return gram_error_; }

 private:
  SectionDomain dom_;
  Eigen::MatrixXd psi_;  // (position - lo) x degree
  double gram_error_ = 0.0;
};

}  // namespace hexshuffle
