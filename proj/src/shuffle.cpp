#include "hexshuffle/shuffle.hpp"

#include "hexshuffle/split_dist.hpp"
#include "hexshuffle/transition.hpp"

#include <stdexcept>

namespace hexshuffle {

// One sweep t = 0..T-1.  Row t of `family` already holds the resampled Z(t),
// so the update runs fully in place: row t+1 is rewritten left to right, and
// every write lands at or left of the read frontier, so the input heights
// X(t+1) are always read before they are overwritten.  Per path the
// displacement X(t+1)-Z(t) pins the new height except on runs of coinciding
// paths with consecutive heights, which split by one inverse-CDF draw each.

void step_up_inplace(PathFamily& family, RandomSource& rng, StepScratch& scratch) {
  const int N = family.box.N, T = family.box.T, S = family.box.S;
  if (S >= T) throw std::invalid_argument("rise step would leave S <= T");
  for (int t = 0; t < T; ++t) {
    const int* y = family.row(t);  // Z(t)
    int* out = family.row(t + 1);  // X(t+1), becomes Z(t+1)
    int i = 0;
    while (i < N) {
      const int d = out[i] - y[i];
      if (d == 1) {
        ++i;  // stays at X(t+1)
      } else if (d == -1) {
        out[i] = y[i];
        ++i;
      } else if (d == 0) {
        int j = i + 1;
        while (j < N && out[j] == out[j - 1] + 1 && out[j] == y[j]) ++j;
        const int k = out[i], l = j - i;
        // the bottom `keep` paths of the run stay put, the rest rise
        SplitDistribution split{(long long)k + T - t - S - 1, (long long)k + 1, l};
        const int keep = split.sample(rng, scratch.dist);
        for (int m = keep; m < l; ++m) out[i + m] += 1;
        i = j;
      } else {
        throw std::logic_error("rise sweep: rows out of sync");
      }
    }
  }
  family.box.S = S + 1;
}

void step_down_inplace(PathFamily& family, RandomSource& rng, StepScratch& scratch) {
  const int N = family.box.N, T = family.box.T, S = family.box.S;
  if (S <= 0) throw std::invalid_argument("lower step would leave S >= 0");
  for (int t = 0; t < T; ++t) {
    const int* y = family.row(t);
    int* out = family.row(t + 1);
    int i = 0;
    while (i < N) {
      const int d = out[i] - y[i];
      if (d == 0) {
        ++i;  // stays at X(t+1)
      } else if (d == 2) {
        out[i] -= 1;
        ++i;
      } else if (d == 1) {
        int j = i + 1;
        while (j < N && out[j] == out[j - 1] + 1 && out[j] == y[j] + 1) ++j;
        const int k = out[i], l = j - i;
        // the top `high` paths of the run stay at x, the rest drop by one
        SplitDistribution split{(long long)N + S - k - l, (long long)N + t + 2 - k - l, l};
        const int high = split.sample(rng, scratch.dist);
        for (int m = 0; m < l - high; ++m) out[i + m] -= 1;
        i = j;
      } else {
        throw std::logic_error("lower sweep: rows out of sync");
      }
    }
  }
  family.box.S = S - 1;
}

PathFamily step_up(const PathFamily& family, RandomSource& rng) {
  PathFamily out = family;
  StepScratch scratch;
  step_up_inplace(out, rng, scratch);
  return out;
}

PathFamily step_down(const PathFamily& family, RandomSource& rng) {
  PathFamily out = family;
  StepScratch scratch;
  step_down_inplace(out, rng, scratch);
  return out;
}

PathFamily sample_uniform(const BoxDims& box, RandomSource& rng) {
  box.require_valid();
  PathFamily family(BoxDims{box.N, box.T, 0});
  for (int t = 0; t <= box.T; ++t)
    for (int i = 0; i < box.N; ++i) family.at(t, i) = i;
  StepScratch scratch;
  for (int s = 0; s < box.S; ++s) step_up_inplace(family, rng, scratch);
  return family;
}

namespace {

// sum of P_a(y, .) P_b(., x) over intermediate rows, by depth-first search
// over the per-path candidate heights
Rat bridge_mass(const BoxDims& box_a, int t_a, Direction dir_a, const BoxDims& box_b, int t_b,
                Direction dir_b, const SectionState& y, const SectionState& x) {
  const int n = box_a.N;
  SectionState z((size_t)n);
  Rat total(0);
  std::function<void(int)> dfs = [&](int i) {
    if (i == n) {
      total += transition_prob<Rat>(box_a, t_a, dir_a, y, z) *
               transition_prob<Rat>(box_b, t_b, dir_b, z, x);
      return;
    }
    const int da = min_delta(dir_a), db = min_delta(dir_b);
    for (int zi : {y[i] + da, y[i] + da + 1}) {
      // z must also reach x[i] through dir_b: x[i] - zi in {db, db+1}
      if (x[i] - zi != db && x[i] - zi != db + 1) continue;
      if (i > 0 && z[i - 1] >= zi) continue;
      z[i] = zi;
      dfs(i + 1);
    }
  };
  dfs(0);
  return total;
}

}  // namespace

Rat exact_step_prob(const PathFamily& from, const PathFamily& to) {
  if (!(from.box.N == to.box.N && from.box.T == to.box.T))
    throw std::invalid_argument("exact_step_prob: mismatched dimensions");
  const int up = to.box.S - from.box.S;
  if (up != 1 && up != -1)
    throw std::invalid_argument("exact_step_prob: rise must change by one");
  if (!validate(from).ok || !validate(to).ok)
    throw std::invalid_argument("exact_step_prob: invalid family");
  const BoxDims mid{from.box.N, from.box.T, from.box.S + up};  // = to.box
  const Direction back = up == 1 ? Direction::s_minus : Direction::s_plus;
  Rat p(1);
  for (int t = 0; t < from.box.T; ++t) {
    const SectionState y = to.section(t);
    const SectionState ynext = to.section(t + 1);
    const SectionState xnext = from.section(t + 1);
    const Rat numer = transition_prob<Rat>(mid, t, Direction::t_plus, y, ynext) *
                      transition_prob<Rat>(mid, t + 1, back, ynext, xnext);
    if (numer == 0) return Rat(0);
    const Rat denom =
        bridge_mass(mid, t, Direction::t_plus, mid, t + 1, back, y, xnext);
    p *= numer / denom;
  }
  return p;
}

int MarkovPlan::rise_after(int r) const {
  int s = box.S;
  for (int i = 0; i < r; ++i) s += eps[i];
  return s;
}

void MarkovPlan::require_valid() const {
  box.require_valid();
  int s = box.S;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] != 1 && eps[i] != -1)
      throw std::invalid_argument("plan steps must be +1 or -1");
    s += eps[i];
    if (s < 0 || s > box.T)
      throw std::invalid_argument("plan leaves the admissible rise range at step " +
                                  std::to_string(i + 1));
  }
}

PathFamily run_chain(const MarkovPlan& plan, PathFamily start, RandomSource& rng,
                     const ChainObserver& observe, const ChainOptions& options) {
  if (options.reverse_order)
    throw std::invalid_argument("reverse update order is reserved but not implemented");
  plan.require_valid();
  if (!(start.box == plan.box)) throw std::invalid_argument("start state does not match plan");
  if (!validate(start).ok) throw std::invalid_argument("start state is not a valid family");
  if (observe) observe(0, start);
  StepScratch scratch;
  for (int r = 1; r <= plan.length(); ++r) {
    if (plan.eps[r - 1] == 1)
      step_up_inplace(start, rng, scratch);
    else
      step_down_inplace(start, rng, scratch);
    if (observe) observe(r, start);
  }
  return start;
}

}  // namespace hexshuffle
