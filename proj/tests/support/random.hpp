#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/vcsp.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace testgen {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);
bool chance(Rng& rng, double p);

/// p/q with p in [lo, hi] and q in [1, max_den].
wclone::Rational rational(Rng& rng, int lo, int hi, int max_den = 1);

wclone::Operation operation(Rng& rng, int d, int k);

/// Each entry is infinite with probability p_inf, else an integer in [lo, hi]
/// divided by a denominator up to max_den.
wclone::WeightedRelation relation(Rng& rng, int d, int m, double p_inf, int lo = 0, int hi = 4,
                                  int max_den = 1);

/// Relations named g0, g1, ... with arities in [1, max_arity].
wclone::Language language(Rng& rng, int d, int count, int max_arity, double p_inf);

/// Positive weights on up to `terms` operations drawn from `pool` (random
/// operations when empty), balanced by negative weight on projections.
wclone::Weighting proper_weighting(Rng& rng, int d, int k, int terms,
                                   const std::vector<wclone::Operation>& pool = {});

/// A random cone problem; when `member` the target is a non-negative
/// combination of the generators.
wclone::ConeProblem cone_problem(Rng& rng, std::size_t dimension, std::size_t generators, bool member);

}  // namespace testgen
