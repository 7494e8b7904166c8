#include "qsv/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsv/bounds.hpp"
#include "qsv/guess_oracle.hpp"
#include "qsv/quantum.hpp"
#include "qsv/sampler.hpp"

namespace qsv {

namespace {

void report(SuiteResult& res, const VerifyOptions& opts, const std::string& instance, double lhs,
            double rhs) {
    if (res.violations.size() >= opts.max_violations) return;
    res.violations.push_back(Violation{res.suite, instance, lhs, rhs, rhs - lhs});
}

// Every exhaustive storage-function instance: fn(n, m, func_index, joint).
template <class Fn>
void for_each_storage_joint(const VerifyOptions& opts, Fn&& fn) {
    for (int n = 2; n <= opts.n_max; ++n) {
        for (int m = 1; m <= std::min(opts.m_max, n - 1); ++m) {
            uint64_t count = storage_function_count(n, m);
            for (uint64_t f = 0; f < count; ++f) fn(n, m, f);
        }
    }
}

std::string storage_tag(int n, int m, uint64_t f) {
    std::ostringstream ss;
    ss << "storage n=" << n << " m=" << m << " f=" << f;
    return ss.str();
}

ClassicalJoint nth_random_joint(const VerifyOptions& opts, int i) {
    SplitMix64 rng = SplitMix64(opts.seed).stream(static_cast<uint64_t>(i));
    int w_size = 2 + (i % 3);
    return random_stochastic_joint(4, w_size, rng);
}

}  // namespace

std::vector<double> default_c_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
    return grid;
}

SuiteResult run_brw_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "brw";
    double bias = opts.inject_brw_bias;

    for_each_storage_joint(opts, [&](int n, int m, uint64_t f) {
        RationalJoint j = storage_function_joint<Rational>(n, m, f);
        for (int k = 1; k <= n; ++k) {
            auto chk = verify_brw(j, k);
            ++res.checks;
            double lhs = to_double(chk.lhs);
            double rhs = to_double(chk.rhs) - bias;
            if (!(bias == 0.0 ? chk.holds : lhs <= rhs + 1e-12))
                report(res, opts, storage_tag(n, m, f) + " k=" + std::to_string(k), lhs, rhs);
        }
    });

    for (int i = 0; i < opts.rand_joints; ++i) {
        ClassicalJoint j = nth_random_joint(opts, i);
        for (int k = 1; k <= j.n; ++k) {
            auto chk = verify_brw(j, k);
            ++res.checks;
            double rhs = chk.rhs - bias;
            if (!(chk.lhs <= rhs + 1e-12))
                report(res, opts,
                       "random joint i=" + std::to_string(i) + " k=" + std::to_string(k), chk.lhs,
                       rhs);
        }
    }
    return res;
}

namespace {

// Involution, inversion identity, and derived-guesser checks for one joint.
void fourier_checks(SuiteResult& res, const VerifyOptions& opts, const ClassicalJoint& j,
                    const std::string& tag) {
    for (int k = 1; k <= j.n; ++k) {
        SubsetStrategy strat = optimal_subset_strategy(j, k);
        for_each_k_subset(j.n, k, [&](const Subset& t) {
            auto dist = error_distribution(strat, j, t);
            auto spec = walsh_transform(dist);
            auto back = inverse_walsh(spec);
            double maxdiff = 0.0;
            for (size_t i = 0; i < dist.size(); ++i)
                maxdiff = std::max(maxdiff, std::abs(dist[i] - back[i]));
            ++res.checks;
            if (maxdiff > 1e-12)
                report(res, opts, tag + " involution k=" + std::to_string(k), maxdiff, 1e-12);

            auto identity = verify_fourier_identity(strat, j, t);
            ++res.checks;
            if (!identity.holds)
                report(res, opts, tag + " inversion-at-0 k=" + std::to_string(k), identity.lhs,
                       identity.rhs);
        });

        for (int jj = 1; jj <= k; ++jj) {
            double acc = 0.0;
            uint64_t count = 0;
            for_each_k_subset(j.n, jj, [&](const Subset& s) {
                acc += xor_guesser_success(strat, j, s);
                ++count;
            });
            double avg = acc / static_cast<double>(count);
            double optimal = pguess_xor(j, jj);
            ++res.checks;
            if (avg > optimal + 1e-12)
                report(res, opts,
                       tag + " xor-guesser k=" + std::to_string(k) + " j=" + std::to_string(jj),
                       avg, optimal);
        }
    }
}

}  // namespace

SuiteResult run_fourier_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "fourier";
    for_each_storage_joint(opts, [&](int n, int m, uint64_t f) {
        fourier_checks(res, opts, storage_function_joint<double>(n, m, f), storage_tag(n, m, f));
    });
    for (int i = 0; i < opts.rand_joints; ++i)
        fourier_checks(res, opts, nth_random_joint(opts, i), "random joint i=" + std::to_string(i));
    return res;
}

SuiteResult run_theorem3_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "theorem3";
    for_each_storage_joint(opts, [&](int n, int m, uint64_t f) {
        ClassicalJoint j = storage_function_joint<double>(n, m, f);
        for (int k = 1; k <= n; ++k) {
            for_each_k_subset(n, k, [&](const Subset& t) {
                auto chk = verify_theorem3(j, k, t);
                ++res.checks;
                if (!chk.holds) {
                    std::ostringstream tag;
                    tag << storage_tag(n, m, f) << " k=" << k << " t={";
                    for (int i : t.indices) tag << i << ",";
                    tag << "}";
                    report(res, opts, tag.str(), chk.lhs, chk.rhs);
                }
            });
        }
    });
    return res;
}

SuiteResult run_listdecode_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "listdecode";

    for (int n = 2; n <= 4; ++n) {
        for (int k = 1; k <= n; ++k) {
            XorCode code(n, k);

            // eps >= 1/2 empties every near-set.
            auto r = check_list_decodable(code, 0.5, 0.0, 0);
            ++res.checks;
            if (!r.holds || r.greedy_list_size != 0)
                report(res, opts,
                       "eps=1/2 n=" + std::to_string(n) + " k=" + std::to_string(k),
                       static_cast<double>(r.greedy_list_size), 0.0);

            // delta = 1: one ball spans message space.
            r = check_list_decodable(code, 0.0, 1.0, 1);
            ++res.checks;
            if (!r.holds || r.greedy_list_size > 1)
                report(res, opts,
                       "delta=1 n=" + std::to_string(n) + " k=" + std::to_string(k),
                       static_cast<double>(r.greedy_list_size), 1.0);
        }
    }

    // Greedy is an upper bound on the optimal cover (n <= 3 exact search).
    for (int n = 2; n <= 3; ++n) {
        for (int k = 1; k <= n; ++k) {
            XorCode code(n, k);
            uint64_t messages = uint64_t(1) << n;
            std::vector<uint64_t> codewords(messages);
            for (uint64_t x = 0; x < messages; ++x)
                codewords[x] = xor_encode(code, BitString::from_index(x, n)).to_index();
            for (double eps : {0.0, 0.25}) {
                for (double delta : {0.0, 0.34}) {
                    double dist_bound = (0.5 - eps) * static_cast<double>(code.m);
                    double radius = delta * static_cast<double>(n);
                    for (uint64_t w = 0; w < (uint64_t(1) << code.m); ++w) {
                        std::vector<uint64_t> near;
                        for (uint64_t x = 0; x < messages; ++x)
                            if (static_cast<double>(
                                    __builtin_popcountll(w ^ codewords[x])) < dist_bound)
                                near.push_back(x);
                        if (near.empty()) continue;
                        uint64_t greedy = greedy_cover_size(near, n, radius);
                        uint64_t optimal = optimal_cover_size(near, n, radius);
                        ++res.checks;
                        if (greedy < optimal)
                            report(res, opts,
                                   "greedy>=optimal n=" + std::to_string(n) +
                                       " k=" + std::to_string(k) + " w=" + std::to_string(w),
                                   static_cast<double>(greedy), static_cast<double>(optimal));
                    }
                }
            }
        }
    }

    // Regression fixture: (3,2) code with the code parameters at eps = 1/2.
    {
        BoundReport params = lemma42_params(10, 2, 0.5);
        auto r = check_list_decodable(XorCode(3, 2), 0.5, params.output("delta"),
                                      static_cast<uint64_t>(params.output("L")));
        ++res.checks;
        if (!r.holds)
            report(res, opts, "fixture n=3 k=2 lemma42(10,2,1/2)",
                   static_cast<double>(r.greedy_list_size), params.output("L"));
    }
    return res;
}

namespace {

DensityMatrix random_density(int d, SplitMix64& rng) {
    auto gauss = [&rng]() {
        double u1 = rng.next_double(), u2 = rng.next_double();
        u1 = std::max(u1, 1e-12);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    Matrix g(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g.at(i, j) = Complex(gauss(), gauss());
    Matrix rho = g * g.adjoint();
    return DensityMatrix(rho.scaled(1.0 / rho.trace().real()));
}

CqEnsemble random_binary_ensemble(int d, SplitMix64& rng) {
    double p0 = 0.05 + 0.9 * rng.next_double();
    return CqEnsemble({p0, 1.0 - p0}, {random_density(d, rng), random_density(d, rng)});
}

}  // namespace

SuiteResult run_lemma1_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "lemma1";

    // Orthogonal pure pair: equality at distance 1/2, pguess 1.
    {
        CqEnsemble ens({0.5, 0.5}, {pure_state({1.0, 0.0}), pure_state({0.0, 1.0})});
        auto chk = verify_lemma1(ens);
        ++res.checks;
        if (!chk.holds || std::abs(chk.distance - 0.5) > 1e-9 || std::abs(chk.pguess - 1.0) > 1e-9)
            report(res, opts, "orthogonal-pure fixture", chk.pguess, 0.5 + chk.distance);
    }
    // Product: identical states carry nothing.
    {
        DensityMatrix half(Matrix::identity(2).scaled(0.5));
        CqEnsemble ens({0.5, 0.5}, {half, half});
        auto chk = verify_lemma1(ens);
        ++res.checks;
        if (!chk.holds || std::abs(chk.distance) > 1e-10 || std::abs(chk.pguess - 0.5) > 1e-10)
            report(res, opts, "product fixture", chk.pguess, 0.5 + chk.distance);
    }

    SplitMix64 root(opts.seed);
    for (int i = 0; i < opts.rand_ensembles; ++i) {
        SplitMix64 rng = root.stream(static_cast<uint64_t>(i) + 1000);
        int d = 2 + static_cast<int>(rng.below(3));  // 2..4
        CqEnsemble ens = random_binary_ensemble(d, rng);
        auto chk = verify_lemma1(ens);
        ++res.checks;
        if (!chk.holds)
            report(res, opts, "random binary ensemble i=" + std::to_string(i), chk.pguess,
                   0.5 + chk.distance);
    }

    // Dimension-bound consistency on random uniform-prior ensembles.
    for (int i = 0; i < opts.rand_ensembles; ++i) {
        SplitMix64 rng = root.stream(static_cast<uint64_t>(i) + 5000);
        int n = 1 + static_cast<int>(rng.below(3));  // 1..3
        int m = static_cast<int>(rng.below(3));      // 0..2
        int count = 1 << n;
        std::vector<DensityMatrix> states;
        for (int x = 0; x < count; ++x) states.push_back(random_density(1 << m, rng));
        CqEnsemble ens(std::vector<double>(static_cast<size_t>(count), 1.0 / count),
                       std::move(states));
        auto chk = dimension_bound_check(ens, m);
        ++res.checks;
        if (!chk.holds)
            report(res, opts, "dimension bound i=" + std::to_string(i), chk.lhs, chk.rhs);
    }
    return res;
}

SuiteResult run_audit_suite(const VerifyOptions& opts) {
    SuiteResult res;
    res.suite = "audit";
    std::vector<double> grid = opts.c_grid.empty() ? default_c_grid() : opts.c_grid;

    AuditReport audit = inequality_audit(opts.audit_k_max, grid);
    res.checks += audit.checks;
    if (!audit.passed && audit.violation) {
        const auto& v = *audit.violation;
        std::ostringstream tag;
        tag << v.check << " k=" << v.k;
        if (v.c > 0.0) tag << " c=" << v.c;
        report(res, opts, tag.str(), v.lhs, v.rhs);
    }

    for (int64_t k = opts.audit_k_max + 1; k <= opts.audit_logk_max; ++k) {
        double lhs = 5.0 * static_cast<double>(k) / 12.0;
        double rhs = std::log2(17.0 * static_cast<double>(k)) - 5.0;
        ++res.checks;
        if (lhs < rhs) {
            report(res, opts, "5k/12 >= log2(17k) - 5 k=" + std::to_string(k), lhs, rhs);
            break;
        }
    }
    return res;
}

std::vector<SuiteResult> run_suites(const std::string& which, const VerifyOptions& opts) {
    std::vector<SuiteResult> out;
    auto want = [&](const char* name) { return which == "all" || which == name; };
    if (want("brw")) out.push_back(run_brw_suite(opts));
    if (want("fourier")) out.push_back(run_fourier_suite(opts));
    if (want("theorem3")) out.push_back(run_theorem3_suite(opts));
    if (want("listdecode")) out.push_back(run_listdecode_suite(opts));
    if (want("lemma1")) out.push_back(run_lemma1_suite(opts));
    if (want("audit")) out.push_back(run_audit_suite(opts));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + which);
    return out;
}

}  // namespace qsv
