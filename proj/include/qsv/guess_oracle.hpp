#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qsv/bitstring.hpp"
#include "qsv/joint.hpp"
#include "qsv/rng.hpp"
#include "qsv/xor_code.hpp"

namespace qsv {

// ---------------------------------------------------------------------------
// Optimal guessing with classical side information. Everything here is an
// exact enumeration; the deterministic argmax strategy is optimal, with ties
// broken toward the lowest guess value so recorded strategies are canonical.
// ---------------------------------------------------------------------------

template <class S>
S pguess_whole(const BasicJoint<S>& j) {
    j.validate();
    S total(0);
    for (int w = 0; w < j.w_size; ++w) {
        S best(0);
        for (uint64_t x = 0; x < j.x_count(); ++x)
            if (j.probs[x][static_cast<size_t>(w)] > best)
                best = j.probs[x][static_cast<size_t>(w)];
        total += best;
    }
    return total;
}

template <class S>
double minentropy(const BasicJoint<S>& j) {
    return -std::log2(to_double(pguess_whole(j)));
}

namespace detail {

// P[X_t = v, W = w] for all v, one subset at a time.
template <class S>
std::vector<std::vector<S>> substring_marginal(const BasicJoint<S>& j, const Subset& t) {
    size_t vals = size_t(1) << t.size();
    std::vector<std::vector<S>> marg(vals, std::vector<S>(static_cast<size_t>(j.w_size), S(0)));
    for (uint64_t x = 0; x < j.x_count(); ++x) {
        uint64_t v = substring_index(x, t);
        for (int w = 0; w < j.w_size; ++w)
            marg[v][static_cast<size_t>(w)] += j.probs[x][static_cast<size_t>(w)];
    }
    return marg;
}

template <class S>
S sum_w_max_v(const std::vector<std::vector<S>>& marg, int w_size) {
    S total(0);
    for (int w = 0; w < w_size; ++w) {
        S best(0);
        for (const auto& row : marg)
            if (row[static_cast<size_t>(w)] > best) best = row[static_cast<size_t>(w)];
        total += best;
    }
    return total;
}

}  // namespace detail

// Average over uniform k-subsets t of the optimal probability of guessing X_t
// from (t, W).
template <class S>
S pguess_subset(const BasicJoint<S>& j, int k) {
    if (k < 0 || k > j.n) throw std::domain_error("pguess_subset: need 0 <= k <= n");
    j.validate();
    if (k == 0) return S(1);
    S acc(0);
    uint64_t count = 0;
    for_each_k_subset(j.n, k, [&](const Subset& t) {
        acc += detail::sum_w_max_v(detail::substring_marginal(j, t), j.w_size);
        ++count;
    });
    return acc / S(static_cast<int64_t>(count));
}

// Average over uniform size-`size` subsets s of the optimal probability of
// guessing the parity of X_s from (s, W). The empty parity is the constant 0,
// so size 0 returns 1.
template <class S>
S pguess_xor(const BasicJoint<S>& j, int size) {
    if (size < 0 || size > j.n) throw std::domain_error("pguess_xor: need 0 <= size <= n");
    j.validate();
    if (size == 0) return S(1);
    S acc(0);
    uint64_t count = 0;
    for_each_k_subset(j.n, size, [&](const Subset& s) {
        for (int w = 0; w < j.w_size; ++w) {
            S p0(0), p1(0);
            for (uint64_t x = 0; x < j.x_count(); ++x) {
                if (subset_parity(x, s))
                    p1 += j.probs[x][static_cast<size_t>(w)];
                else
                    p0 += j.probs[x][static_cast<size_t>(w)];
            }
            acc += (p0 > p1) ? p0 : p1;
        }
        ++count;
    });
    return acc / S(static_cast<int64_t>(count));
}

// (1/2^k) * sum_j C(k,j) (2 p_j - 1) for p_list = (p_0, ..., p_k).
template <class S>
S brw_rhs(const std::vector<S>& p_list) {
    if (p_list.empty()) throw std::domain_error("brw_rhs: p_list must hold p_0..p_k");
    for (const S& p : p_list)
        if (p < S(0) || p > S(1)) throw std::domain_error("brw_rhs: probabilities in [0,1]");
    int k = static_cast<int>(p_list.size()) - 1;
    S acc(0);
    for (int jj = 0; jj <= k; ++jj) {
        S coeff = scalar_traits<S>::from_ratio(
            static_cast<int64_t>(binomial_coefficient(k, jj)), int64_t(1) << k);
        acc += coeff * (S(2) * p_list[static_cast<size_t>(jj)] - S(1));
    }
    return acc;
}

template <class S>
struct BrwCheck {
    S lhs;
    S rhs;
    bool holds = false;
    double slack = 0.0;  // rhs - lhs
};

// Subset-guessing vs XOR-guessing comparison: lhs = pguess_subset(j, k),
// rhs = brw_rhs over p_j = pguess_xor(j, j).
template <class S>
BrwCheck<S> verify_brw(const BasicJoint<S>& j, int k) {
    if (k < 1 || k > j.n) throw std::domain_error("verify_brw: need 1 <= k <= n");
    std::vector<S> p_list;
    p_list.reserve(static_cast<size_t>(k) + 1);
    for (int jj = 0; jj <= k; ++jj) p_list.push_back(pguess_xor(j, jj));
    BrwCheck<S> out{pguess_subset(j, k), brw_rhs(p_list), false, 0.0};
    out.slack = to_double(out.rhs) - to_double(out.lhs);
    if constexpr (scalar_traits<S>::exact)
        out.holds = out.lhs <= out.rhs;
    else
        out.holds = to_double(out.lhs) <= to_double(out.rhs) + 1e-12;
    return out;
}

// ---------------------------------------------------------------------------
// Subset strategies and the Walsh machinery for reducing subset guessing to
// XOR guessing.
// ---------------------------------------------------------------------------

// One guess g(t, w) in {0,1}^k per (k-subset t, side value w); subsets are
// addressed by their lexicographic rank.
struct SubsetStrategy {
    int n = 0;
    int k = 0;
    std::vector<std::vector<uint64_t>> guesses;  // [subset_rank - 1][w]
};

template <class S>
SubsetStrategy optimal_subset_strategy(const BasicJoint<S>& j, int k) {
    if (k < 1 || k > j.n) throw std::domain_error("optimal_subset_strategy: need 1 <= k <= n");
    j.validate();
    SubsetStrategy strat;
    strat.n = j.n;
    strat.k = k;
    for_each_k_subset(j.n, k, [&](const Subset& t) {
        auto marg = detail::substring_marginal(j, t);
        std::vector<uint64_t> row(static_cast<size_t>(j.w_size), 0);
        for (int w = 0; w < j.w_size; ++w) {
            S best = marg[0][static_cast<size_t>(w)];
            uint64_t arg = 0;
            for (uint64_t v = 1; v < marg.size(); ++v) {
                if (marg[v][static_cast<size_t>(w)] > best) {  // ties keep the lowest v
                    best = marg[v][static_cast<size_t>(w)];
                    arg = v;
                }
            }
            row[static_cast<size_t>(w)] = arg;
        }
        strat.guesses.push_back(std::move(row));
    });
    return strat;
}

// Distribution of the error string w = guess XOR truth on subset t.
template <class S>
std::vector<S> error_distribution(const SubsetStrategy& strat, const BasicJoint<S>& j,
                                  const Subset& t) {
    if (t.size() != strat.k || t.ground_size != j.n)
        throw std::invalid_argument("error_distribution: subset does not match strategy");
    uint64_t rank = subset_rank(t);
    const auto& guesses = strat.guesses[static_cast<size_t>(rank - 1)];
    std::vector<S> dist(size_t(1) << strat.k, S(0));
    for (uint64_t x = 0; x < j.x_count(); ++x) {
        uint64_t truth = substring_index(x, t);
        for (int w = 0; w < j.w_size; ++w)
            dist[guesses[static_cast<size_t>(w)] ^ truth] += j.probs[x][static_cast<size_t>(w)];
    }
    return dist;
}

// Distribution over {0,1}^k together with its Walsh-Hadamard coefficients
// q_s = 2^-k sum_w p(w) (-1)^(w.s).
template <class S>
struct ErrorSpectrum {
    int k = 0;
    std::vector<S> p_w;
    std::vector<S> q_s;
};

namespace detail {

template <class S>
void fwht_in_place(std::vector<S>& a) {
    size_t sz = a.size();
    for (size_t half = 1; half < sz; half <<= 1) {
        for (size_t i = 0; i < sz; i += half << 1) {
            for (size_t jj = i; jj < i + half; ++jj) {
                S u = a[jj];
                S v = a[jj + half];
                a[jj] = u + v;
                a[jj + half] = u - v;
            }
        }
    }
}

}  // namespace detail

template <class S>
ErrorSpectrum<S> walsh_transform(const std::vector<S>& p_w) {
    size_t sz = p_w.size();
    if (sz == 0 || (sz & (sz - 1)) != 0)
        throw std::invalid_argument("walsh_transform: length must be a power of two");
    int k = 0;
    while ((size_t(1) << k) < sz) ++k;
    S total(0);
    for (const S& p : p_w) {
        if (p < S(0)) throw std::invalid_argument("walsh_transform: negative probability");
        total += p;
    }
    if constexpr (scalar_traits<S>::exact) {
        if (total != S(1)) throw std::invalid_argument("walsh_transform: must sum to 1");
    } else {
        if (std::abs(to_double(total) - 1.0) > 1e-12)
            throw std::invalid_argument("walsh_transform: must sum to 1 (tol 1e-12)");
    }
    ErrorSpectrum<S> spec;
    spec.k = k;
    spec.p_w = p_w;
    spec.q_s = p_w;
    detail::fwht_in_place(spec.q_s);
    S scale = scalar_traits<S>::from_ratio(1, int64_t(1) << k);
    for (S& q : spec.q_s) q *= scale;
    return spec;
}

// p(w) = sum_s q_s (-1)^(w.s): the unscaled transform applied to q.
template <class S>
std::vector<S> inverse_walsh(const ErrorSpectrum<S>& spec) {
    std::vector<S> p = spec.q_s;
    detail::fwht_in_place(p);
    return p;
}

template <class S>
struct FourierIdentityCheck {
    S lhs;  // P_{W|T=t}(0)
    S rhs;  // sum over all s of q_s
    bool holds = false;
};

// P_{W|T=t}(0) equals the sum of all Walsh coefficients of the error
// distribution (Fourier inversion at 0).
template <class S>
FourierIdentityCheck<S> verify_fourier_identity(const SubsetStrategy& strat,
                                                const BasicJoint<S>& j, const Subset& t) {
    auto dist = error_distribution(strat, j, t);
    auto spec = walsh_transform(dist);
    S rhs(0);
    for (const S& q : spec.q_s) rhs += q;
    FourierIdentityCheck<S> out{dist[0], rhs, false};
    if constexpr (scalar_traits<S>::exact)
        out.holds = out.lhs == out.rhs;
    else
        out.holds = std::abs(to_double(out.lhs) - to_double(out.rhs)) <= 1e-12;
    return out;
}

// Success probability of the derived XOR guesser for the fixed subset s:
// draw a k-subset t uniformly among those containing s, run the subset
// strategy on t, output the parity of the guessed bits at the positions of s.
// Exact enumeration over all such t.
template <class S>
S xor_guesser_success(const SubsetStrategy& strat, const BasicJoint<S>& j, const Subset& s) {
    if (s.ground_size != j.n) throw std::invalid_argument("xor_guesser_success: ground mismatch");
    int jsize = s.size();
    if (jsize > strat.k) throw std::invalid_argument("xor_guesser_success: |s| must be <= k");
    S acc(0);
    uint64_t t_count = 0;
    for_each_k_subset(j.n, strat.k, [&](const Subset& t) {
        for (int i : s.indices)
            if (!t.contains(i)) return;
        ++t_count;
        // s as a subset of [k] through the positions of t.
        uint64_t smask_in_k = 0;
        for (int pos = 0; pos < t.size(); ++pos)
            if (s.contains(t.indices[static_cast<size_t>(pos)]))
                smask_in_k |= uint64_t(1) << (t.size() - 1 - pos);
        auto dist = error_distribution(strat, j, t);
        for (uint64_t w = 0; w < dist.size(); ++w)
            if ((__builtin_popcountll(w & smask_in_k) & 1) == 0) acc += dist[w];
    });
    if (t_count == 0) throw std::logic_error("xor_guesser_success: no containing subset");
    return acc / S(static_cast<int64_t>(t_count));
}

// Stochastic joint with iid uniform weights, normalized; double path only.
inline ClassicalJoint random_stochastic_joint(int n, int w_size, SplitMix64& rng) {
    ClassicalJoint j(n, w_size);
    double total = 0.0;
    for (auto& row : j.probs)
        for (double& p : row) {
            p = rng.next_double();
            total += p;
        }
    for (auto& row : j.probs)
        for (double& p : row) p /= total;
    return j;
}

}  // namespace qsv
