#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsv {

struct Violation {
    std::string suite;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
};

struct SuiteResult {
    std::string suite;
    uint64_t checks = 0;
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
};

struct VerifyOptions {
    int n_max = 3;  // exhaustive storage-function sweep covers n <= n_max
    int m_max = 2;
    int rand_joints = 100;     // stochastic joints at n = 4
    int rand_ensembles = 100;  // random binary cq-ensembles, d <= 4
    uint64_t seed = 1;
    int64_t audit_k_max = 10000;
    int64_t audit_logk_max = 1000000;  // extended range for the 5k/12 check
    std::vector<double> c_grid;        // defaults to 0.05, 0.10, ..., 1.0
    size_t max_violations = 16;
    double inject_brw_bias = 0.0;  // test hook: subtracts from every rhs
};

std::vector<double> default_c_grid();

// Exhaustive subset-vs-XOR guessing comparison over all storage functions
// (exact rationals), plus seeded random stochastic joints at n = 4.
SuiteResult run_brw_suite(const VerifyOptions& opts);

// Walsh involution, the Fourier inversion identity at 0, and the derived
// XOR guesser against the optimal XOR value, on the same instance family.
SuiteResult run_fourier_suite(const VerifyOptions& opts);

// Permutation-reduction equality for every joint, subset size, and target.
SuiteResult run_theorem3_suite(const VerifyOptions& opts);

// Exhaustive list-decodability checker on tiny XOR codes with expected
// outcomes, including greedy-vs-optimal cover consistency.
SuiteResult run_listdecode_suite(const VerifyOptions& opts);

// Guessing-vs-distance fixtures plus random binary ensembles and the
// dimension-bound consistency check.
SuiteResult run_lemma1_suite(const VerifyOptions& opts);

// Numeric audit of the proof-step inequalities.
SuiteResult run_audit_suite(const VerifyOptions& opts);

std::vector<SuiteResult> run_suites(const std::string& which, const VerifyOptions& opts);

}  // namespace qsv
