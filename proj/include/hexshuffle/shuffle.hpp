// Elementary rise/lower steps of the family measure, the exact uniform
// sampler built from them, and chains of steps.
//
// Randomness contract: a step consumes exactly one uniform per block, blocks
// taken in increasing height within a section, sections in increasing t;
// chains consume their steps' draws in order r = 1, 2, ...  Together with the
// portable RandomSource this makes every trajectory a pure function of
// (seed, dimensions, plan).
#pragma once

#include "hexshuffle/path_family.hpp"
#include "hexshuffle/rational.hpp"
#include "hexshuffle/rng.hpp"

#include <functional>
#include <vector>

namespace hexshuffle {

// Scratch buffer reused across in-place steps.
struct StepScratch {
  std::vector<double> dist;  // split-distribution weight table
};

// In-place S -> S+1 / S -> S-1 resampling sweeps.  The family is modified row
// by row for t = 1..T and its S is adjusted at the end.
void step_up_inplace(PathFamily& family, RandomSource& rng, StepScratch& scratch);
void step_down_inplace(PathFamily& family, RandomSource& rng, StepScratch& scratch);

PathFamily step_up(const PathFamily& family, RandomSource& rng);
PathFamily step_down(const PathFamily& family, RandomSource& rng);

// Exact uniform sample from the family ensemble of `box`, by S rise sweeps
// from the one-element S=0 ensemble.  O(N*T*S) time, one buffer.
PathFamily sample_uniform(const BoxDims& box, RandomSource& rng);

// Exact probability that one sweep starting from `from` produces `to`
// (to.box.S must be from.box.S +- 1).  Computed from the one-step stochastic
// matrices in rational arithmetic, independently of the sweep code above.
Rat exact_step_prob(const PathFamily& from, const PathFamily& to);

// A chain: start at S0 = box.S with a uniform (or given) state, then apply
// steps eps_r in {+1,-1}, r = 1..R.
struct MarkovPlan {
  BoxDims box;            // box.S is the starting rise S0
  std::vector<int> eps;   // +-1 per step

  int length() const { return (int)eps.size(); }
  int rise_after(int r) const;  // S(r)
  void require_valid() const;   // every S(r) must stay in [0, T]
};

// "reverse update order" is reserved but not implemented; passing true throws
struct ChainOptions {
  bool reverse_order = false;
};

using ChainObserver = std::function<void(int r, const PathFamily& state)>;

// Runs the plan from `start` (must match plan.box), invoking the observer on
// every state r = 0..R.  Returns the final state.
PathFamily run_chain(const MarkovPlan& plan, PathFamily start, RandomSource& rng,
                     const ChainObserver& observe = nullptr,
                     const ChainOptions& options = {});

}  // namespace hexshuffle
