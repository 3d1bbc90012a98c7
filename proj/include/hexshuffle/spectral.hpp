// Spectral form of the one-step matrices and the determinantal space-time
// correlation kernel of a chain of rise/lower steps.
//
// Each direction's matrix acts diagonally in the section bases: it carries
// Psi_i of the source section to c(i) * Psi_i of the target section, with an
// explicit square-root decay coefficient c(i).  Chaining steps multiplies the
// coefficients, which is what the space-time kernel is made of.
#pragma once

#include "hexshuffle/hahn.hpp"
#include "hexshuffle/path_family.hpp"
#include "hexshuffle/shuffle.hpp"
#include "hexshuffle/transition.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hexshuffle {

// c(i) for a single step with source parameters (box.S, t).  The rise/lower
// coefficients depend only on the unordered pair of S values (resp. of t
// values), so lowering directions reuse the raising formulas one step down.
// Throws std::domain_error unless 0 <= i < min(source, target) section size.
double spectral_coefficient(const BoxDims& box, int t, Direction d, int i);

// One direction's matrix in spectral form: v(x,y) = sum_i c(i) Psi_i(x) Psi_i(y)
// and the N-point transition probability rebuilt from it.
class SpectralStep {
 public:
  SpectralStep(const BoxDims& box, int t, Direction d);

  double v(int x, int y) const;
  // equals the exact transition probability; used as a cross-check
  double prob(const SectionState& x, const SectionState& y) const;

  const std::vector<double>& coefficients() const { return c_; }
  const HahnBasis& source() const { return src_; }
  const HahnBasis& target() const { return tgt_; }

 private:
  BoxDims box_;
  int t_;
  Direction dir_;
  BoxDims tgt_box_;
  int tgt_t_;
  HahnBasis src_, tgt_;
  std::vector<double> c_;
};

// max |spectral prob - exact prob| over every pair of source/target sections
// (brute force; meant for small boxes)
double verify_spectral(const BoxDims& box, int t, Direction d, double cap = 1e6);

// A point of a chain trajectory: chain step r, section position t, height x.
struct SpaceTimePoint {
  int r = 0;
  int t = 0;
  int x = 0;
};

// Correlation kernel of the chain described by `plan`, started from an exact
// uniform sample at plan.box.  Joint occupation probabilities of points on a
// space-like collection (r nondecreasing, t nonincreasing after sorting) are
// determinants of this kernel.
class SpaceTimeKernel {
 public:
  explicit SpaceTimeKernel(MarkovPlan plan);

  double operator()(const SpaceTimePoint& p, const SpaceTimePoint& q) const;

  // det [ K(p_i, p_j) ]; sorts the points and throws std::invalid_argument if
  // the sorted collection is not space-like
  double correlation(std::vector<SpaceTimePoint> pts) const;

 private:
  MarkovPlan plan_;
  std::vector<int> s_of_r_;  // S after r steps
  mutable std::map<std::pair<int, int>, HahnBasis> bases_;  // keyed by (S, t)

  const HahnBasis& basis(int S, int t) const;
  void require_point(const SpaceTimePoint& p) const;
  // product of step coefficients from (r1,t1) to (r2,t2); needs r1 <= r2,
  // t1 >= t2.  Sets `dead` once any factor has crossed zero (the term and all
  // later i vanish).
  double chain_decay(int i, int r1, int t1, int r2, int t2, bool& dead) const;
};

// Monte-Carlo estimate of the same joint occupation probability, from
// `chains` independent trajectories of the plan.  Useful as an oracle, and
// the only route for point sets outside the determinant formula's scope.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // binomial
  long long hits = 0;
  int trials = 0;
};

McEstimate mc_correlation(const MarkovPlan& plan, const std::vector<SpaceTimePoint>& pts,
                          int chains, RandomSource& rng);

}  // namespace hexshuffle
