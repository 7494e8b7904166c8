#include "qsv/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qsv {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: x must be in [0,1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double binary_entropy_inv(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("binary_entropy_inv: y must be in [0,1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double hoeffding_tail(int64_t n, double eps) {
    if (n < 1) throw std::domain_error("hoeffding_tail: n must be >= 1");
    if (!(eps >= 0.0)) throw std::domain_error("hoeffding_tail: eps must be >= 0");
    return std::exp(-2.0 * static_cast<double>(n) * eps * eps);
}

namespace {

double binomial_tail_exact64(int64_t k, int64_t threshold) {
    // C(k,j) fits in 64 bits for k <= 64; partial sums fit in 128.
    unsigned __int128 sum = 0;
    unsigned __int128 coeff = 1;  // C(k,0)
    for (int64_t j = 0; j <= threshold; ++j) {
        if (j > 0) coeff = coeff * static_cast<unsigned>(k - j + 1) / static_cast<unsigned>(j);
        sum += coeff;
    }
    // Division by a power of two is exact in double once the sum is converted.
    long double num = static_cast<long double>(sum);
    return static_cast<double>(num / std::pow(2.0L, static_cast<long double>(k)));
}

double binomial_tail_logspace(int64_t k, int64_t threshold) {
    // Largest term is at j = threshold (threshold <= k/2 in every use that
    // lands here; for larger thresholds the terms still peak at min(threshold, k/2)).
    int64_t jpeak = std::min(threshold, k / 2);
    double kd = static_cast<double>(k);
    auto log_term = [&](int64_t j) {
        double jd = static_cast<double>(j);
        return std::lgamma(kd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(kd - jd + 1.0) -
               kd * std::log(2.0);
    };
    double m = log_term(jpeak);
    // Kahan summation of exp(log_term - m)
    double sum = 0.0, c = 0.0;
    for (int64_t j = 0; j <= threshold; ++j) {
        double t = std::exp(log_term(j) - m);
        double y = t - c;
        double s = sum + y;
        c = (s - sum) - y;
        sum = s;
    }
    return std::exp(m) * sum;
}

}  // namespace

double binomial_tail_below(int64_t k, int64_t threshold) {
    if (k < 1) throw std::domain_error("binomial_tail_below: k must be >= 1");
    if (threshold < 0 || threshold > k)
        throw std::domain_error("binomial_tail_below: threshold must be in [0,k]");
    if (threshold == k) return 1.0;
    if (k <= 64) return binomial_tail_exact64(k, threshold);
    return binomial_tail_logspace(k, threshold);
}

int hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (int i = 1; i <= a.size(); ++i) d += (a.bit(i) != b.bit(i)) ? 1 : 0;
    return d;
}

}  // namespace qsv
