#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsv {

struct Precondition {
    std::string name;
    bool satisfied = false;
    double margin = 0.0;  // signed distance into the satisfied region
};

// Evaluated bound plus its precondition ledger. A failed precondition is
// reported, never thrown; `vacuous` marks a value outside its informative
// range (probability >= 1, entropy <= 0).
struct BoundReport {
    double value = 0.0;
    std::map<std::string, double> outputs;
    std::vector<Precondition> preconditions;
    bool vacuous = false;
    std::map<std::string, double> params;
    std::vector<std::string> notes;

    bool preconditions_ok() const {
        for (const auto& p : preconditions)
            if (!p.satisfied) return false;
        return true;
    }

    const Precondition& precondition(const std::string& name) const;
    double output(const std::string& name) const;
};

// Blockwise sampling bound: rate loss 3*xi + 2*kappa*log2(1/kappa) with
// kappa = num_blocks / (sampled_blocks * alphabet_bits), and smoothness
// eps = 2*2^(-xi*n*alphabet_bits) + 3*e^(-r*xi^2/8). Ledger: kappa <= 0.15.
BoundReport kr_blockwise(int64_t num_blocks, int64_t alphabet_bits, int64_t sampled_blocks,
                         double xi);

// Recursive sampling bound: sample_size = floor(n^((3/4)^f)), rate loss
// 5*f*log2(r)/r^(1/4), eps = 5*f*2^(-sqrt(r)/8). Ledger: sample_size >= r^4.
BoundReport kr_recursive(double n_bits, int64_t f, int64_t r);

// Bit-extractor threshold from an approximately list-decodable code:
// ell = H(delta)*n + log2(L) + log2(2/eps).
BoundReport listdecode_extractor_threshold(int64_t n, double delta, double L, double eps);

// Classical-to-quantum lift: (ell + log2(1/eps), 3*sqrt(eps)).
BoundReport kt_lift(double ell, double eps);

// Threshold for the XOR-code bit extractor against quantum side information:
// ell = H(ln(2/eps)/k)*n + 4*log2(1/eps) + 3, error 3*sqrt(eps).
// Ledger: eps > 2k^2/2^n and k >= 2 ln(2/eps).
BoundReport xor_extractor_threshold(int64_t n, int64_t k, double eps);

// List-decodability parameters of the (n,k)-XOR code:
// delta = ln(2/eps)/k, L = ceil(4/eps^2). Ledger: eps > 2k^2/2^n (strict).
BoundReport lemma42_params(int64_t n, int64_t k, double eps);

// Min-entropy needed on the whole string so that a random k-subset keeps
// log2(1/p) bits: H((6/k)*log2(17/p))*n + 8*log2(12/p) + 3.
// Ledger: log2(1/p) <= k/12 - 5 and H-argument <= 1/2.
BoundReport main_sampling_threshold(int64_t n, int64_t k, double p);

// Sampled min-entropy under a min-entropy rate c: H^{-1}(c/2)/6 * k - 5.
BoundReport corollary1_bound(int64_t n, int64_t k, double c);

// Largest log2(1/p) in [0, k/12 - 5] whose threshold fits under hmin
// (bisection; the threshold is monotone in log2(1/p)).
BoundReport best_sampled_rate(int64_t n, int64_t k, double hmin);

// Random-access-code success bound via the sampled min-entropy with
// rate eps = 1 - m/n: p_max = 2^-(H^{-1}(eps/2)/6 * k - 5).
BoundReport rac_success_bound(int64_t n, int64_t m, int64_t k);

// p <= c_eta * (1/2 + 1/2*sqrt(eta*m/n))^k, valid for eta > 2 ln 2. The
// constant c_eta is caller-supplied; output is marked non-rigorous.
BoundReport brw_bound(int64_t n, int64_t m, int64_t k, double eta, double c_eta);

// Largest p in [1/2, 1] allowed by m >= (1 - H(p))*n.
double nayak_max_p(int64_t n, int64_t m);

enum class SamplingMode { Blockwise, Recursive };

// Best-case smoothness error floor: blockwise 3*e^(-0.15*k^2/(8n)),
// recursive 5*2^(-k^(1/8)/8).
double smoothness_floor(SamplingMode mode, int64_t n, int64_t k);

struct AuditViolation {
    std::string check;
    int64_t k = 0;
    double c = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AuditReport {
    bool passed = true;
    uint64_t checks = 0;
    std::optional<AuditViolation> violation;
};

// Numeric audit of the proof-step inequalities behind the sampling theorem:
// (i)  5k/12 >= log2(17k) - 5 for k in [1, k_max]
// (ii) binomial_tail_below(k, floor(k/4)) <= e^(-k/8) for k in [1, k_max]
// (iii) with p = 2^-(H^{-1}(c/2)k/6 - 5) and n = k: the threshold chain
//       log2(1/p) <= k/12 - 5, H-argument <= c/2, and full threshold <= c*k
//       for every c in c_grid (instances with p >= 1 are vacuous and skipped).
// Stops at the first violation.
AuditReport inequality_audit(int64_t k_max, const std::vector<double>& c_grid);

}  // namespace qsv
