#pragma once

#include <cstdint>

#include "qsv/bitstring.hpp"

namespace qsv {

// Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

// The value x in [0, 1/2] with H(x) = y, by bisection to 1e-12.
double binary_entropy_inv(double y);

// e^(-2 n eps^2)
double hoeffding_tail(int64_t n, double eps);

// sum_{j=0}^{threshold} C(k,j) / 2^k. Exact integer arithmetic for k <= 64,
// log-space terms with compensated summation above.
double binomial_tail_below(int64_t k, int64_t threshold);

int hamming_distance(const BitString& a, const BitString& b);

}  // namespace qsv
