#include "hexshuffle/spectral.hpp"

#include "hexshuffle/enumerate.hpp"
#include "hexshuffle/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexshuffle {

namespace {

// sqrt((1 - i/A)(1 - i/B)); zero with `dead` set once either factor is <= 0
// (both factors decrease with i, so dead stays dead)
double decay_factor(int i, long long A, long long B, bool& dead) {
  const double f1 = 1.0 - (double)i / (double)A;
  const double f2 = 1.0 - (double)i / (double)B;
  if (f1 <= 0.0 || f2 <= 0.0) {
    dead = true;
    return 0.0;
  }
  return std::sqrt(f1 * f2);
}

// coefficient of a rise/lower step between rise values s and s', |s-s'| = 1
double rise_step_factor(const BoxDims& box, int s_from, int s_to, int i, bool& dead) {
  const long long lo = std::min(s_from, s_to), hi = std::max(s_from, s_to);
  return decay_factor(i, lo + box.N, (long long)box.T + box.N - hi, dead);
}

// coefficient of the position step t=k -> k-1 (independent of S)
double position_step_factor(const BoxDims& box, int k, int i, bool& dead) {
  return decay_factor(i, (long long)box.N + k - 1, (long long)box.T + box.N - k, dead);
}

}  // namespace

double spectral_coefficient(const BoxDims& box, int t, Direction d, int i) {
  require_step_valid(box, t, d);
  const StepTarget tgt = step_target(box, t, d);
  const int n =
      std::min(section_size(box, t), section_size({box.N, box.T, tgt.S}, tgt.t));
  if (i < 0 || i >= n) throw std::domain_error("spectral coefficient index out of range");
  bool dead = false;
  double c;
  switch (d) {
    case Direction::t_plus: c = position_step_factor(box, t + 1, i, dead); break;
    case Direction::t_minus: c = position_step_factor(box, t, i, dead); break;
    case Direction::s_plus: c = rise_step_factor(box, box.S, box.S + 1, i, dead); break;
    default: c = rise_step_factor(box, box.S, box.S - 1, i, dead); break;
  }
  return dead ? 0.0 : c;
}

SpectralStep::SpectralStep(const BoxDims& box, int t, Direction d)
    : box_(box),
      t_(t),
      dir_(d),
      tgt_box_{box.N, box.T, step_target(box, t, d).S},
      tgt_t_(step_target(box, t, d).t),
      src_(box, t),
      tgt_(tgt_box_, tgt_t_) {
  const int n = std::min(src_.size(), tgt_.size());
  c_.resize((size_t)n);
  for (int i = 0; i < n; ++i) c_[(size_t)i] = spectral_coefficient(box, t, d, i);
}

double SpectralStep::v(int x, int y) const {
  double sum = 0.0;
  for (int i = 0; i < (int)c_.size(); ++i) sum += c_[(size_t)i] * src_.psi(i, x) * tgt_.psi(i, y);
  return sum;
}

double SpectralStep::prob(const SectionState& x, const SectionState& y) const {
  const int N = box_.N;
  if ((int)x.size() != N || (int)y.size() != N)
    throw std::invalid_argument("section tuple has wrong length");
  Eigen::MatrixXd m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = v(x[(size_t)i], y[(size_t)j]);
  double r = m.determinant();
  // sqrt(rho_tgt(y) / rho_src(x)), in logs to dodge the factorials
  r *= std::exp(0.5 * (log_rho(tgt_box_, tgt_t_, y) - log_rho(box_, t_, x)));
  for (int i = 0; i < N; ++i) r /= c_[(size_t)i];
  return r;
}

double verify_spectral(const BoxDims& box, int t, Direction d, double cap) {
  const SpectralStep step(box, t, d);
  const StepTarget tgt = step_target(box, t, d);
  const auto xs = enumerate_sections(box, t, cap);
  const auto ys = enumerate_sections({box.N, box.T, tgt.S}, tgt.t, cap);
  double worst = 0.0;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      const double exact = transition_prob<double>(box, t, d, x, y);
      worst = std::max(worst, std::abs(step.prob(x, y) - exact));
    }
  return worst;
}

SpaceTimeKernel::SpaceTimeKernel(MarkovPlan plan) : plan_(std::move(plan)) {
  plan_.require_valid();
  s_of_r_.resize((size_t)plan_.length() + 1);
  s_of_r_[0] = plan_.box.S;
  for (int r = 1; r <= plan_.length(); ++r)
    s_of_r_[(size_t)r] = s_of_r_[(size_t)r - 1] + plan_.eps[(size_t)r - 1];
}

const HahnBasis& SpaceTimeKernel::basis(int S, int t) const {
  const auto key = std::make_pair(S, t);
  auto it = bases_.find(key);
  if (it == bases_.end())
    it = bases_.emplace(key, HahnBasis(BoxDims{plan_.box.N, plan_.box.T, S}, t)).first;
  return it->second;
}

void SpaceTimeKernel::require_point(const SpaceTimePoint& p) const {
  if (p.r < 0 || p.r > plan_.length())
    throw std::invalid_argument("point's chain step is outside the plan");
  if (p.t < 0 || p.t > plan_.box.T)
    throw std::invalid_argument("point's section position is out of range");
}

double SpaceTimeKernel::chain_decay(int i, int r1, int t1, int r2, int t2, bool& dead) const {
  double prod = 1.0;
  for (int k = t1; k > t2 && !dead; --k) prod *= position_step_factor(plan_.box, k, i, dead);
  for (int r = r1; r < r2 && !dead; ++r)
    prod *= rise_step_factor(plan_.box, s_of_r_[(size_t)r], s_of_r_[(size_t)r + 1], i, dead);
  return dead ? 0.0 : prod;
}

double SpaceTimeKernel::operator()(const SpaceTimePoint& p, const SpaceTimePoint& q) const {
  require_point(p);
  require_point(q);
  const int N = plan_.box.N;
  const HahnBasis& bp = basis(s_of_r_[(size_t)p.r], p.t);
  const HahnBasis& bq = basis(s_of_r_[(size_t)q.r], q.t);
  if (p.r >= q.r && p.t <= q.t) {
    // q-to-p product over the first N modes, none of whose factors vanish
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
      bool dead = false;
      const double c = chain_decay(i, q.r, q.t, p.r, p.t, dead);
      if (dead || !(c > 0.0))
        throw std::runtime_error("singular pair: a reciprocal decay coefficient vanished");
      sum += bp.psi(i, p.x) * bq.psi(i, q.x) / c;
    }
    return sum;
  }
  if (p.t < q.t)
    throw std::invalid_argument("kernel pair is not space-like (needs r ordered against t)");
  // p-to-q product over the higher modes; factors crossing zero end the sum
  const int imax = std::min(bp.size(), bq.size());
  double sum = 0.0;
  for (int i = N; i < imax; ++i) {
    bool dead = false;
    const double c = chain_decay(i, p.r, p.t, q.r, q.t, dead);
    if (dead) break;
    sum += c * bp.psi(i, p.x) * bq.psi(i, q.x);
  }
  return -sum;
}

double SpaceTimeKernel::correlation(std::vector<SpaceTimePoint> pts) const {
  for (const auto& p : pts) require_point(p);
  std::sort(pts.begin(), pts.end(), [](const SpaceTimePoint& a, const SpaceTimePoint& b) {
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

McEstimate mc_correlation(const MarkovPlan& plan, const std::vector<SpaceTimePoint>& pts,
                          int chains, RandomSource& rng) {
  plan.require_valid();
  if (chains < 1) throw std::invalid_argument("need at least one trajectory");
  for (const auto& p : pts)
    if (p.r < 0 || p.r > plan.length())
      throw std::invalid_argument("point's chain step is outside the plan");
  long long hits = 0;
  for (int c = 0; c < chains; ++c) {
    PathFamily state = sample_uniform(plan.box, rng);
    bool all = true;
    const auto check = [&](int r, const PathFamily& f) {
      for (const auto& p : pts) {
        if (p.r != r) continue;
        bool found = false;
        for (int i = 0; i < f.box.N; ++i)
          if (f.at(p.t, i) == p.x) {
            found = true;
            break;
          }
        if (!found) all = false;
      }
    };
    run_chain(plan, std::move(state), rng, check);
    if (all) ++hits;
  }
  McEstimate est;
  est.hits = hits;
  est.trials = chains;
  est.value = (double)hits / (double)chains;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / (double)chains);
  return est;
}

}  // namespace hexshuffle
