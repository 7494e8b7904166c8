#include "qsv/xor_code.hpp"

#include <limits>
#include <stdexcept>

namespace qsv {

uint64_t binomial_coefficient(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial_coefficient: need 0 <= k <= n");
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int j = 1; j <= k; ++j) {
        c = c * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
        if (c > static_cast<unsigned __int128>(std::numeric_limits<int64_t>::max()))
            throw std::overflow_error("binomial_coefficient: result exceeds 2^63");
    }
    return static_cast<uint64_t>(c);
}

Subset subset_unrank(int n, int k, uint64_t idx) {
    uint64_t total = binomial_coefficient(n, k);
    if (idx < 1 || idx > total) throw std::out_of_range("subset_unrank: idx out of range");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    uint64_t remaining = idx - 1;  // 0-based position within the lex order
    int next = 1;
    for (int slot = k; slot >= 1; --slot) {
        for (int v = next;; ++v) {
            // subsets starting with v at this slot: choose slot-1 from the values above v
            uint64_t block = binomial_coefficient(n - v, slot - 1);
            if (remaining < block) {
                out.push_back(v);
                next = v + 1;
                break;
            }
            remaining -= block;
        }
    }
    return Subset(std::move(out), n);
}

uint64_t subset_rank(const Subset& s) {
    int n = s.ground_size;
    int k = s.size();
    uint64_t idx = 0;
    int prev = 0;
    for (int slot = 0; slot < k; ++slot) {
        int v = s.indices[static_cast<size_t>(slot)];
        for (int u = prev + 1; u < v; ++u) idx += binomial_coefficient(n - u, k - slot - 1);
        prev = v;
    }
    return idx + 1;
}

XorCode::XorCode(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("XorCode: need 1 <= k <= n");
    m = binomial_coefficient(n, k);
}

BitString xor_encode(const XorCode& code, const BitString& x) {
    if (x.size() != code.n) throw std::invalid_argument("xor_encode: message length mismatch");
    std::vector<uint8_t> out;
    out.reserve(static_cast<size_t>(code.m));
    uint64_t xi = x.to_index();
    std::vector<int> idx;
    first_k_subset(code.n, code.k, idx);
    do {
        out.push_back(subset_parity(xi, Subset(idx, code.n)));
    } while (next_k_subset(code.n, idx));
    return BitString(std::move(out));
}

uint8_t xor_extract_bit(const XorCode& code, const BitString& x, uint64_t seed) {
    if (x.size() != code.n)
        throw std::invalid_argument("xor_extract_bit: message length mismatch");
    Subset s = subset_unrank(code.n, code.k, seed);  // throws on out-of-range seed
    return subset_parity(x.to_index(), s);
}

namespace {

int hamming_u64(uint64_t a, uint64_t b) { return __builtin_popcountll(a ^ b); }

bool covered(const std::vector<uint64_t>& points, const std::vector<char>& done, uint64_t center,
             double radius, std::vector<size_t>* hits) {
    bool any = false;
    for (size_t i = 0; i < points.size(); ++i) {
        if (done[i]) continue;
        if (static_cast<double>(hamming_u64(points[i], center)) <= radius) {
            if (hits) hits->push_back(i);
            any = true;
        }
    }
    return any;
}

}  // namespace

uint64_t greedy_cover_size(const std::vector<uint64_t>& points, int n, double radius) {
    if (n < 1 || n > 20) throw std::domain_error("greedy_cover_size: n out of exhaustive range");
    std::vector<char> done(points.size(), 0);
    size_t remaining = points.size();
    uint64_t balls = 0;
    uint64_t space = uint64_t(1) << n;
    while (remaining > 0) {
        size_t best_count = 0;
        uint64_t best_center = 0;
        std::vector<size_t> best_hits;
        for (uint64_t center = 0; center < space; ++center) {
            std::vector<size_t> hits;
            covered(points, done, center, radius, &hits);
            if (hits.size() > best_count) {
                best_count = hits.size();
                best_center = center;
                best_hits = std::move(hits);
            }
        }
        (void)best_center;
        if (best_count == 0)
            throw std::logic_error("greedy_cover_size: uncoverable point");  // radius >= 0 covers
        for (size_t i : best_hits) {
            if (!done[i]) {
                done[i] = 1;
                --remaining;
            }
        }
        ++balls;
    }
    return balls;
}

uint64_t optimal_cover_size(const std::vector<uint64_t>& points, int n, double radius) {
    if (n < 1 || n > 3) throw std::domain_error("optimal_cover_size: exact search needs n <= 3");
    if (points.empty()) return 0;
    uint64_t space = uint64_t(1) << n;
    // All center subsets, smallest first.
    for (uint64_t size = 1; size <= space; ++size) {
        for (uint64_t centers = 0; centers < (uint64_t(1) << space); ++centers) {
            if (static_cast<uint64_t>(__builtin_popcountll(centers)) != size) continue;
            bool all = true;
            for (uint64_t pt : points) {
                bool hit = false;
                for (uint64_t c = 0; c < space && !hit; ++c)
                    if ((centers >> c) & 1)
                        hit = static_cast<double>(hamming_u64(pt, c)) <= radius;
                if (!hit) {
                    all = false;
                    break;
                }
            }
            if (all) return size;
        }
    }
    return space;  // radius >= 0, so singleton balls always cover
}

ListDecodeResult check_list_decodable(const XorCode& code, double eps, double delta, uint64_t L) {
    if (code.n > 4 || code.m > 20)
        throw std::domain_error("check_list_decodable: exhaustive regime is n <= 4, C(n,k) <= 20");
    if (!(eps >= 0.0 && eps <= 0.5))
        throw std::domain_error("check_list_decodable: eps must be in [0,1/2]");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::domain_error("check_list_decodable: delta must be in [0,1]");

    uint64_t messages = uint64_t(1) << code.n;
    uint64_t words = uint64_t(1) << code.m;
    int mbits = static_cast<int>(code.m);

    std::vector<uint64_t> codewords(messages);
    for (uint64_t x = 0; x < messages; ++x)
        codewords[x] = xor_encode(code, BitString::from_index(x, code.n)).to_index();

    double dist_bound = (0.5 - eps) * static_cast<double>(code.m);
    double radius = delta * static_cast<double>(code.n);

    ListDecodeResult res;
    for (uint64_t w = 0; w < words; ++w) {
        std::vector<uint64_t> near;
        for (uint64_t x = 0; x < messages; ++x)
            if (static_cast<double>(hamming_u64(w, codewords[x])) < dist_bound) near.push_back(x);
        uint64_t balls = near.empty() ? 0 : greedy_cover_size(near, code.n, radius);
        res.greedy_list_size = std::max(res.greedy_list_size, balls);
        if (balls > L && res.holds) {
            res.holds = false;
            res.witness = BitString::from_index(w, mbits);
        }
    }
    return res;
}

}  // namespace qsv
