#include "qsv/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qsv {

void SamplePlan::validate() const {
    if (n < 1) throw std::invalid_argument("SamplePlan: n must be >= 1");
    if (k < 0) throw std::invalid_argument("SamplePlan: k must be >= 0");
    if (mode == SampleMode::Bitwise) {
        if (k > n) throw std::invalid_argument("SamplePlan: k must be <= n");
    } else {
        if (block_size < 1 || n % block_size != 0)
            throw std::invalid_argument("SamplePlan: block_size must divide n");
        if (static_cast<int64_t>(block_size) * k > n)
            throw std::invalid_argument("SamplePlan: block_size * r must be <= n");
    }
}

namespace {

// First `take` entries of a uniformly shuffled [1..count], sorted.
std::vector<int> partial_fisher_yates(int count, int take, SplitMix64& rng) {
    std::vector<int> pool(static_cast<size_t>(count));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < take; ++i) {
        uint64_t jmp = rng.below(static_cast<uint64_t>(count - i));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(i) + jmp]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + take);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Subset sample_subset(const SamplePlan& plan, SplitMix64& rng) {
    plan.validate();
    if (plan.mode == SampleMode::Bitwise)
        return Subset(partial_fisher_yates(plan.n, plan.k, rng), plan.n);

    int blocks = plan.n / plan.block_size;
    std::vector<int> chosen = partial_fisher_yates(blocks, plan.k, rng);
    std::vector<int> idx;
    idx.reserve(static_cast<size_t>(plan.k) * plan.block_size);
    for (int b : chosen)
        for (int off = 1; off <= plan.block_size; ++off)
            idx.push_back((b - 1) * plan.block_size + off);
    return Subset(std::move(idx), plan.n);
}

ClassicalJoint permutation_transform(const ClassicalJoint& j, const std::vector<int>& pi) {
    j.validate();
    if (pi.size() != static_cast<size_t>(j.n))
        throw std::invalid_argument("permutation_transform: permutation size mismatch");
    std::vector<char> seen(static_cast<size_t>(j.n) + 1, 0);
    for (int v : pi) {
        if (v < 1 || v > j.n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("permutation_transform: not a permutation of [n]");
        seen[static_cast<size_t>(v)] = 1;
    }
    ClassicalJoint out(j.n, j.w_size);
    for (uint64_t x = 0; x < j.x_count(); ++x) {
        uint64_t y = 0;
        for (int i = 1; i <= j.n; ++i) {
            uint64_t bit = (x >> (j.n - i)) & 1u;
            y |= bit << (j.n - pi[static_cast<size_t>(i - 1)]);
        }
        for (int w = 0; w < j.w_size; ++w)
            out.probs[y][static_cast<size_t>(w)] = j.probs[x][static_cast<size_t>(w)];
    }
    return out;
}

Theorem3Check verify_theorem3(const ClassicalJoint& j, int k, const Subset& t) {
    if (j.n > 5) throw std::domain_error("verify_theorem3: exhaustive regime is n <= 5");
    if (k < 1 || k > j.n || t.size() != k || t.ground_size != j.n)
        throw std::invalid_argument("verify_theorem3: bad subset");
    j.validate();

    Theorem3Check out;
    out.lhs = pguess_subset(j, k);

    // Average over S uniform and Pi uniform among permutations with Pi(S) = t
    // of the optimal guessing of Pi(X)_t given (Pi, W).
    std::vector<int> rest;  // positions of [n] outside t
    for (int i = 1; i <= j.n; ++i)
        if (!t.contains(i)) rest.push_back(i);

    double acc = 0.0;
    uint64_t pair_count = 0;
    for_each_k_subset(j.n, k, [&](const Subset& s) {
        std::vector<int> s_rest;
        for (int i = 1; i <= j.n; ++i)
            if (!s.contains(i)) s_rest.push_back(i);

        // All bijections s -> t and complement -> complement.
        std::vector<int> perm_t(t.indices), perm_rest(rest);
        std::sort(perm_t.begin(), perm_t.end());
        do {
            std::sort(perm_rest.begin(), perm_rest.end());
            do {
                std::vector<int> pi(static_cast<size_t>(j.n));
                for (int a = 0; a < k; ++a)
                    pi[static_cast<size_t>(s.indices[static_cast<size_t>(a)] - 1)] =
                        perm_t[static_cast<size_t>(a)];
                for (size_t a = 0; a < s_rest.size(); ++a)
                    pi[static_cast<size_t>(s_rest[a] - 1)] = perm_rest[a];

                ClassicalJoint permuted = permutation_transform(j, pi);
                auto marg = detail::substring_marginal(permuted, t);
                acc += to_double(detail::sum_w_max_v(marg, j.w_size));
                ++pair_count;
            } while (std::next_permutation(perm_rest.begin(), perm_rest.end()));
        } while (std::next_permutation(perm_t.begin(), perm_t.end()));
    });
    out.rhs = acc / static_cast<double>(pair_count);
    out.holds = std::abs(out.lhs - out.rhs) <= 1e-12;
    return out;
}

namespace {

struct MeanVar {
    double mean = 0.0;
    double m2 = 0.0;
    uint64_t count = 0;

    void add(double v) {
        ++count;
        double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }

    // Chan et al. pairwise combination; associative enough for a fixed tree.
    static MeanVar merge(const MeanVar& a, const MeanVar& b) {
        if (a.count == 0) return b;
        if (b.count == 0) return a;
        MeanVar out;
        out.count = a.count + b.count;
        double d = b.mean - a.mean;
        out.mean = a.mean + d * static_cast<double>(b.count) / static_cast<double>(out.count);
        out.m2 = a.m2 + b.m2 +
                 d * d * static_cast<double>(a.count) * static_cast<double>(b.count) /
                     static_cast<double>(out.count);
        return out;
    }
};

int thread_budget() {
    if (const char* env = std::getenv("QSV_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace

MonteCarloEstimate monte_carlo_pguess_subset(const ClassicalJoint& j, int k, uint64_t trials,
                                             uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_pguess_subset: trials must be >= 1");
    if (k < 1 || k > j.n) throw std::invalid_argument("monte_carlo_pguess_subset: bad k");
    j.validate();

    // Fixed 64-way split keeps the aggregation tree independent of the number
    // of worker threads.
    constexpr uint64_t kBlocks = 64;
    uint64_t per = trials / kBlocks, extra = trials % kBlocks;
    SplitMix64 root(seed);
    SamplePlan plan{SampleMode::Bitwise, j.n, k, 1, seed};

    std::vector<MeanVar> partial(kBlocks);
    auto run_block = [&](uint64_t b) {
        uint64_t quota = per + (b < extra ? 1 : 0);
        SplitMix64 rng = root.stream(b);
        MeanVar mv;
        for (uint64_t i = 0; i < quota; ++i) {
            Subset tsub = sample_subset(plan, rng);
            auto marg = detail::substring_marginal(j, tsub);
            mv.add(to_double(detail::sum_w_max_v(marg, j.w_size)));
        }
        partial[b] = mv;
    };

    int workers = std::min<int>(thread_budget(), static_cast<int>(kBlocks));
    if (workers <= 1) {
        for (uint64_t b = 0; b < kBlocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (uint64_t b = static_cast<uint64_t>(w); b < kBlocks;
                     b += static_cast<uint64_t>(workers))
                    run_block(b);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Fixed pairwise reduction tree.
    std::vector<MeanVar> level(partial);
    while (level.size() > 1) {
        std::vector<MeanVar> next;
        for (size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(MeanVar::merge(level[i], level[i + 1]));
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }

    MonteCarloEstimate out;
    out.trials = level[0].count;
    out.estimate = level[0].mean;
    double var = (out.trials > 1)
                     ? level[0].m2 / static_cast<double>(out.trials - 1)
                     : 0.0;
    if (var < 0.0) var = 0.0;
    out.stderr_ = std::sqrt(var / static_cast<double>(out.trials));
    return out;
}

}  // namespace qsv
