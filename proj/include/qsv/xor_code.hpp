#pragma once

#include <cstdint>
#include <optional>

#include "qsv/bitstring.hpp"

namespace qsv {

// C(n,k) with an overflow guard (throws std::overflow_error past 2^63).
uint64_t binomial_coefficient(int n, int k);

// idx-th k-subset of [n] in lexicographic order, 1-based idx.
Subset subset_unrank(int n, int k, uint64_t idx);

// Inverse of subset_unrank.
uint64_t subset_rank(const Subset& s);

// The (n,k)-XOR code: one codeword bit per k-subset of [n], equal to the
// parity of that subset, subsets in lexicographic order.
struct XorCode {
    int n = 0;
    int k = 0;
    uint64_t m = 0;  // C(n,k)

    XorCode(int n_, int k_);
};

// Materializes the full codeword; intended for small n.
BitString xor_encode(const XorCode& code, const BitString& x);

// Codeword bit at position seed (1-based) without materializing the codeword.
uint8_t xor_extract_bit(const XorCode& code, const BitString& x, uint64_t seed);

struct ListDecodeResult {
    bool holds = true;
    std::optional<BitString> witness;  // a received word violating the list bound
    uint64_t greedy_list_size = 0;     // max greedy cover size over received words
};

// Exhaustive approximate-list-decodability check at tiny scale: for every
// received word c', the messages within relative distance (1/2 - eps) of its
// codeword must be coverable by at most L Hamming balls of radius delta*n in
// message space. Ball centers live in {0,1}^n; the radius is delta*n, not
// delta*m (the two string lengths differ for an XOR code).
ListDecodeResult check_list_decodable(const XorCode& code, double eps, double delta, uint64_t L);

// Greedy cover of `points` (message indices) by radius-`radius` Hamming balls
// with centers anywhere in {0,1}^n. Upper-bounds the optimal cover size.
uint64_t greedy_cover_size(const std::vector<uint64_t>& points, int n, double radius);

// Exact minimum cover size by exhaustive search over center sets; n <= 3.
uint64_t optimal_cover_size(const std::vector<uint64_t>& points, int n, double radius);

}  // namespace qsv
