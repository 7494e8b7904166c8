#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qsv/rational.hpp"

namespace qsv {

// Joint distribution of an n-bit string X and a finite classical value W.
// probs[x][w] is indexed by the big-endian integer value of x.
template <class S>
struct BasicJoint {
    int n = 0;
    int w_size = 0;
    std::vector<std::vector<S>> probs;

    BasicJoint() = default;
    BasicJoint(int n_, int w_size_)
        : n(n_), w_size(w_size_),
          probs(size_t(1) << n_, std::vector<S>(static_cast<size_t>(w_size_), S(0))) {
        if (n_ < 1 || n_ > 20) throw std::invalid_argument("joint: n out of range");
        if (w_size_ < 1) throw std::invalid_argument("joint: w_size must be >= 1");
    }

    uint64_t x_count() const { return uint64_t(1) << n; }

    void validate() const {
        if (probs.size() != x_count()) throw std::invalid_argument("joint: bad row count");
        S total(0);
        for (const auto& row : probs) {
            if (row.size() != static_cast<size_t>(w_size))
                throw std::invalid_argument("joint: bad column count");
            for (const S& p : row) {
                if (p < S(0)) throw std::invalid_argument("joint: negative probability");
                total += p;
            }
        }
        if constexpr (scalar_traits<S>::exact) {
            if (total != S(1)) throw std::invalid_argument("joint: probabilities must sum to 1");
        } else {
            if (std::abs(to_double(total) - 1.0) > 1e-12)
                throw std::invalid_argument("joint: probabilities must sum to 1 (tol 1e-12)");
        }
    }
};

using ClassicalJoint = BasicJoint<double>;
using RationalJoint = BasicJoint<Rational>;

// X uniform, W = f(X) for the deterministic f encoded by func_index: digit x
// of func_index in base 2^m is f(x).
template <class S>
BasicJoint<S> storage_function_joint(int n, int m, uint64_t func_index) {
    if (n < 1 || n > 4) throw std::domain_error("storage_function_joint: need n <= 4");
    if (m < 1 || m > n) throw std::domain_error("storage_function_joint: need 1 <= m <= n");
    BasicJoint<S> j(n, 1 << m);
    uint64_t base = uint64_t(1) << m;
    S px = scalar_traits<S>::from_ratio(1, int64_t(1) << n);
    for (uint64_t x = 0; x < j.x_count(); ++x) {
        uint64_t w = func_index % base;
        func_index /= base;
        j.probs[x][w] = px;
    }
    return j;
}

// Number of deterministic maps {0,1}^n -> {0,1}^m, i.e. 2^(m*2^n).
// Iteration over all of them is only feasible when this is small; callers cap.
inline uint64_t storage_function_count(int n, int m) {
    if (n < 1 || n > 4) throw std::domain_error("storage_function_count: need n <= 4");
    if (m < 1 || m > n) throw std::domain_error("storage_function_count: need 1 <= m <= n");
    int bits = m * (1 << n);
    if (bits >= 63) throw std::overflow_error("storage_function_count: too many functions");
    return uint64_t(1) << bits;
}

}  // namespace qsv
