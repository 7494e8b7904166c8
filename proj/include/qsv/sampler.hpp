#pragma once

#include <cstdint>
#include <vector>

#include "qsv/bitstring.hpp"
#include "qsv/guess_oracle.hpp"
#include "qsv/joint.hpp"
#include "qsv/rng.hpp"

namespace qsv {

enum class SampleMode { Bitwise, Blockwise };

struct SamplePlan {
    SampleMode mode = SampleMode::Bitwise;
    int n = 0;
    int k = 0;           // bitwise: subset size; blockwise: number of blocks r
    int block_size = 1;  // blockwise only; must divide n with block_size * k <= n
    uint64_t seed = 0;

    void validate() const;
};

// Uniform subset draw: bitwise via partial Fisher-Yates over positions,
// blockwise via the same over blocks, expanded to bit indices. Deterministic
// given the generator state.
Subset sample_subset(const SamplePlan& plan, SplitMix64& rng);

// Joint of (Pi(X), W) for a permutation pi of [n]: position i of x moves to
// position pi(i). `pi` is 1-based with pi[0] unused slack removed: pi[i-1]
// is the image of i.
ClassicalJoint permutation_transform(const ClassicalJoint& j, const std::vector<int>& pi);

struct Theorem3Check {
    double lhs = 0.0;  // subset-averaged optimal guessing of X_S from (S, W)
    double rhs = 0.0;  // optimal guessing of Pi(X)_t from (Pi, W) under the coupled (S, Pi)
    bool holds = false;
};

// The coupled ensembles coincide, so the two guessing probabilities agree
// exactly; checked by exhaustive enumeration of every (S, Pi) with Pi(S) = t.
// Needs n <= 5.
Theorem3Check verify_theorem3(const ClassicalJoint& j, int k, const Subset& t);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    uint64_t trials = 0;
};

// Mean over sampled subsets T of the exact inner value sum_w max_v P[X_T=v,w].
// Trials are split over fixed sub-streams and merged pairwise, so the result
// does not depend on thread count. QSV_THREADS caps workers.
MonteCarloEstimate monte_carlo_pguess_subset(const ClassicalJoint& j, int k, uint64_t trials,
                                             uint64_t seed);

}  // namespace qsv
