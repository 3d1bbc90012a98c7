#include "hexshuffle/bulk.hpp"

#include "hexshuffle/hahn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace hexshuffle {

namespace {

using cplx = std::complex<double>;

// z^n for any integer n, kept single-valued (no log/branch cut involved)
cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15)
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Panel {
  cplx value;
  double error;
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx resg = kWg[3] * fc;
  cplx resk = kWgk[7] * fc;
  for (int j = 0; j < 3; ++j) {
    const double absc = half * kXgk[2 * j + 1];
    const cplx fsum = f(center - absc) + f(center + absc);
    resg += kWg[j] * fsum;
    resk += kWgk[2 * j + 1] * fsum;
  }
  for (int j = 0; j < 4; ++j) {
    const double absc = half * kXgk[2 * j];
    resk += kWgk[2 * j] * (f(center - absc) + f(center + absc));
  }
  return {resk * half, std::abs((resk - resg) * half)};
}

cplx adaptive(const std::function<cplx(double)>& f, double a, double b, double tol, int depth) {
  const Panel p = gk15(f, a, b);
  if (p.error <= tol || depth >= 24) {
    if (p.error > tol)
      std::cerr << "warning: contour quadrature stopped at depth " << depth
                << " with error estimate " << p.error << "\n";
    return p.value;
  }
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

double BulkRegime::density() const { return phi / std::numbers::pi; }

BulkRegime BulkRegime::at(const BulkPosition& p) {
  BulkRegime r;
  const double f1 = p.x0;
  const double f2 = p.sigma + p.n - p.x0;
  const double f3 = p.t0 + p.n - p.x0;
  const double f4 = p.tau - p.t0 - p.sigma + p.x0;
  if (!(f1 > 0 && f2 > 0 && f3 > 0 && f4 > 0)) {
    // outside the open region where all four distances to the frozen
    // boundaries are positive; report a frozen regime
    r.in_bulk = false;
    const double num = -p.n * (p.n + p.tau) + f2 * f3 + f1 * f4;
    r.phi = num <= 0 ? std::numbers::pi : 0.0;
    return r;
  }
  double cphi = (-p.n * (p.n + p.tau) + f2 * f3 + f1 * f4) / (2.0 * std::sqrt(f1 * f2 * f3 * f4));
  r.in_bulk = std::abs(cphi) < 1.0;
  cphi = std::clamp(cphi, -1.0, 1.0);
  r.phi = std::acos(cphi);
  r.c1 = std::sqrt(f1 * f2 / (f4 * f3));
  r.c2 = std::sqrt(f1 * f3 / (f4 * f2));
  return r;
}

BulkKernel::BulkKernel(const BulkRegime& regime, std::vector<int> eps)
    : regime_(regime), eps_(std::move(eps)) {
  if (!regime_.in_bulk)
    throw std::invalid_argument("bulk kernel needs a position strictly inside the bulk");
  for (int e : eps_)
    if (e != 1 && e != -1) throw std::invalid_argument("chain step signs must be +1 or -1");
}

std::complex<double> BulkKernel::integrand(cplx z, int dt, int dx, int r_lo, int r_hi,
                                           bool inverse) const {
  cplx v = ipow(1.0 + regime_.c1 * z, dt) * ipow(z, -(dx + 1));
  for (int k = r_lo + 1; k <= r_hi; ++k) {
    const cplx f = 1.0 + regime_.c2 * (eps_[(size_t)k - 1] == 1 ? 1.0 / z : z);
    v = inverse ? v / f : v * f;
  }
  return v;
}

double BulkKernel::arc_integral(bool through_plus_one, int dt, int dx, int r_lo, int r_hi,
                                bool inverse) const {
  const double phi = regime_.phi;
  const double a = -phi;
  const double b = through_plus_one ? phi : phi - 2.0 * std::numbers::pi;

  // poles of the integrand all sit on the negative real axis; if one comes
  // within 1e-3 of the arc, bow the interior of the arc radially away from it
  // (the endpoints are pinned)
  double bump = 0.0;
  std::vector<double> pole_radii;
  if (dt < 0 && regime_.c1 > 0) pole_radii.push_back(1.0 / regime_.c1);
  if (inverse && regime_.c2 > 0)
    for (int k = r_lo + 1; k <= r_hi; ++k)
      pole_radii.push_back(eps_[(size_t)k - 1] == 1 ? regime_.c2 : 1.0 / regime_.c2);
  const double cos_far = through_plus_one ? std::cos(phi) : -1.0;
  for (double rp : pole_radii) {
    const double d2 = 1.0 + rp * rp + 2.0 * rp * cos_far;  // squared distance to the arc
    if (d2 < 1e-6) {
      bump = rp < 1.0 ? 1e-3 : -1e-3;
      std::cerr << "warning: contour pole at radius " << rp
                << " is within 1e-3 of the arc; bowing the contour by " << bump << "\n";
      break;
    }
  }

  const auto f = [&](double theta) -> cplx {
    const double u = (theta - a) / (b - a);
    const double s = std::sin(std::numbers::pi * u);
    const double rho = 1.0 + bump * s * s;
    const double drho =
        bump * 2.0 * s * std::cos(std::numbers::pi * u) * std::numbers::pi / (b - a);
    const cplx z = rho * std::exp(cplx(0.0, theta));
    // dz = (rho' + i rho) e^{i theta} d theta, and the 1/(2 pi i) out front
    const cplx measure = (cplx(drho, rho) * std::exp(cplx(0.0, theta))) /
                         cplx(0.0, 2.0 * std::numbers::pi);
    return integrand(z, dt, dx, r_lo, r_hi, inverse) * measure;
  };
  const cplx value = adaptive(f, a, b, tolerance, 0);
  if (std::abs(value.imag()) > 1e-6)
    std::cerr << "warning: contour integral has imaginary part " << value.imag() << "\n";
  return value.real();
}

double BulkKernel::contour_value(bool through_plus_one, int dt, int dx, int r_lo, int r_hi,
                                 bool inverse) const {
  return arc_integral(through_plus_one, dt, dx, r_lo, r_hi, inverse);
}

double BulkKernel::operator()(const BulkPoint& p, const BulkPoint& q) const {
  const int R = (int)eps_.size();
  if (p.r < 0 || p.r > R || q.r < 0 || q.r > R)
    throw std::invalid_argument("bulk point's chain step is outside the step signs given");
  if (p.r >= q.r && p.t <= q.t)
    return arc_integral(true, p.t - q.t, p.x - q.x, q.r, p.r, true);
  if (p.t < q.t)
    throw std::invalid_argument("kernel pair is not space-like (needs r ordered against t)");
  return arc_integral(false, p.t - q.t, p.x - q.x, p.r, q.r, false);
}

double BulkKernel::correlation(std::vector<BulkPoint> pts) const {
  std::sort(pts.begin(), pts.end(), [](const BulkPoint& a, const BulkPoint& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.t != b.t) return a.t > b.t;
    return a.x < b.x;
  });
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].t > pts[i - 1].t)
      throw std::invalid_argument("points do not lie on a space-like collection");
  const int n = (int)pts.size();
  if (n == 0) return 1.0;
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = (*this)(pts[(size_t)i], pts[(size_t)j]);
  return k.determinant();
}

std::vector<ConvergenceRow> density_convergence(const BulkPosition& pos,
                                                const std::vector<int>& scales) {
  const double limit = BulkRegime::at(pos).density();
  std::vector<ConvergenceRow> rows;
  for (int L : scales) {
    ConvergenceRow row;
    row.scale = L;
    row.box = BoxDims{(int)std::lround(pos.n * L), (int)std::lround(pos.tau * L),
                      (int)std::lround(pos.sigma * L)};
    row.t = (int)std::lround(pos.t0 * L);
    row.x = (int)std::lround(pos.x0 * L);
    row.box.require_valid();
    const HahnBasis basis(row.box, row.t);
    double dens = 0.0;
    for (int i = 0; i < row.box.N; ++i) {
      const double v = basis.psi(i, row.x);
      dens += v * v;
    }
    row.finite_density = dens;
    row.bulk_density = limit;
    row.gap = std::abs(dens - limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hexshuffle
