#include "hexshuffle/hahn.hpp"

#include "hexshuffle/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hexshuffle {

HahnBasis::HahnBasis(const BoxDims& box, int t) {
  dom_ = section_domain(box, t);
  const int m = dom_.size();
  psi_.resize(m, m);

  // sqrt of the weight, shifted in log space so the peak is O(1)
  Eigen::VectorXd v(m);
  double lmax = -1e300;
  for (int p = 0; p < m; ++p) {
    v[p] = log_weight(box, t, dom_.lo + p);
    if (v[p] > lmax) lmax = v[p];
  }
  for (int p = 0; p < m; ++p) v[p] = std::exp(0.5 * (v[p] - lmax));
  v /= v.norm();

  // Lanczos on the diagonal operator (multiplication by the height); two
  // reorthogonalization passes keep the columns orthonormal to machine
  // precision at any size
  psi_.col(0) = v;
  Eigen::VectorXd w(m);
  double beta_prev = 0.0;
  for (int k = 0; k < m - 1; ++k) {
    for (int p = 0; p < m; ++p) w[p] = (double)(dom_.lo + p) * psi_(p, k);
    const double alpha = psi_.col(k).dot(w);
    w -= alpha * psi_.col(k);
    if (k > 0) w -= beta_prev * psi_.col(k - 1);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j <= k; ++j) w -= psi_.col(j).dot(w) * psi_.col(j);
    const double beta = w.norm();
    if (!(beta > 0.0))
      throw std::runtime_error("basis construction broke down at degree " + std::to_string(k + 1));
    psi_.col(k + 1) = w / beta;
    beta_prev = beta;
  }

  gram_error_ = (psi_.transpose() * psi_ - Eigen::MatrixXd::Identity(m, m))
                    .cwiseAbs()
                    .maxCoeff();
  if (!(gram_error_ < 1e-8))
    throw std::runtime_error("section basis failed the orthonormality check: max deviation " +
                             std::to_string(gram_error_));
}

}  // namespace hexshuffle
