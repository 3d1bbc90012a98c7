// Local statistics deep inside a macroscopic hexagon: the two-parameter
// family of translation-invariant kernels reached by scaling the finite
// kernel around a bulk point, written as contour integrals over unit-circle
// arcs and evaluated by adaptive quadrature.
#pragma once

#include "hexshuffle/types.hpp"

#include <complex>
#include <vector>

namespace hexshuffle {

// Macroscopic coordinates: the box and observation point divided by the
// scale, so a finite box (N,T,S) around section t, height x at scale L has
// n = N/L, tau = T/L, sigma = S/L, t0 = t/L, x0 = x/L.
struct BulkPosition {
  double n = 1.0;
  double tau = 2.0;
  double sigma = 1.0;
  double t0 = 1.0;
  double x0 = 1.0;
};

// Arc half-angle phi and the two contour constants at a bulk position.
// density = phi/pi is the limiting chance that a height is occupied.
struct BulkRegime {
  double phi = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool in_bulk = false;

  double density() const;

  static BulkRegime at(const BulkPosition& p);
};

// Microscopic offsets around the bulk point: chain step r, section position
// offset t, height offset x.
struct BulkPoint {
  int r = 0;
  int t = 0;
  int x = 0;
};

// The limiting kernel.  Entries are contour integrals
//   (1/2\pi i) \oint (1+c1 z)^{dt} \prod_k (1+c2 z^{-eps_k})^{+-1} z^{-dx-1} dz
// over one of two unit-circle arcs joining e^{-i phi} to e^{i phi}: through
// +1 (with inverse step factors) when the row point is at or past the column
// point in chain steps and not ahead in position, through -1 (plain factors)
// otherwise.  Only integer powers appear, so the integrand is single-valued.
class BulkKernel {
 public:
  // eps: the +-1 chain step signs; step k of the chain is eps[k-1]
  explicit BulkKernel(const BulkRegime& regime, std::vector<int> eps = {});

  double operator()(const BulkPoint& p, const BulkPoint& q) const;

  // det [ K(p_i, p_j) ]; sorts and requires a space-like collection, exactly
  // like the finite kernel
  double correlation(std::vector<BulkPoint> pts) const;

  // absolute quadrature tolerance (default 1e-10)
  double tolerance = 1e-10;

  // single-arc value of the generic integrand; exposed so the difference of
  // the two arcs can be checked against the full-circle residue at 0
  double contour_value(bool through_plus_one, int dt, int dx, int r_lo, int r_hi,
                       bool inverse) const;

 private:
  BulkRegime regime_;
  std::vector<int> eps_;

  std::complex<double> integrand(std::complex<double> z, int dt, int dx, int r_lo, int r_hi,
                                 bool inverse) const;
  double arc_integral(bool through_plus_one, int dt, int dx, int r_lo, int r_hi,
                      bool inverse) const;
};

// One row of a density convergence table: finite-size occupation probability
// at the embedded point against its limit.
struct ConvergenceRow {
  int scale = 0;
  BoxDims box;
  int t = 0, x = 0;
  double finite_density = 0.0;
  double bulk_density = 0.0;
  double gap = 0.0;
};

// Embeds `pos` at each scale (rounding to integers), computes the one-point
// function exactly and compares with the limit density.
std::vector<ConvergenceRow> density_convergence(const BulkPosition& pos,
                                                const std::vector<int>& scales);

}  // namespace hexshuffle
