#include "qsv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsv/entropy.hpp"

namespace qsv {

namespace {

constexpr double kTwoLn2 = 1.3862943611198906;  // 2 ln 2

double log2_safe(double x) { return std::log2(x); }

Precondition make_pre(std::string name, double margin, bool strict = false) {
    Precondition p;
    p.name = std::move(name);
    p.margin = margin;
    p.satisfied = strict ? (margin > 0.0) : (margin >= 0.0);
    return p;
}

}  // namespace

const Precondition& BoundReport::precondition(const std::string& name) const {
    for (const auto& p : preconditions)
        if (p.name == name) return p;
    throw std::out_of_range("BoundReport: no precondition named " + name);
}

double BoundReport::output(const std::string& name) const {
    auto it = outputs.find(name);
    if (it == outputs.end()) throw std::out_of_range("BoundReport: no output named " + name);
    return it->second;
}

BoundReport kr_blockwise(int64_t num_blocks, int64_t alphabet_bits, int64_t sampled_blocks,
                         double xi) {
    if (num_blocks < 1 || alphabet_bits < 1 || sampled_blocks < 1)
        throw std::domain_error("kr_blockwise: counts must be >= 1");
    if (sampled_blocks > num_blocks)
        throw std::domain_error("kr_blockwise: sampled_blocks must be <= num_blocks");
    if (!(xi > 0.0)) throw std::domain_error("kr_blockwise: xi must be > 0");

    double n = static_cast<double>(num_blocks);
    double r = static_cast<double>(sampled_blocks);
    double logx = static_cast<double>(alphabet_bits);

    double kappa = n / (r * logx);
    double rate_loss = 3.0 * xi + 2.0 * kappa * log2_safe(1.0 / kappa);
    double smooth_eps = 2.0 * std::exp2(-xi * n * logx) + 3.0 * std::exp(-r * xi * xi / 8.0);

    BoundReport rep;
    rep.params = {{"num_blocks", n}, {"alphabet_bits", logx}, {"sampled_blocks", r}, {"xi", xi}};
    rep.outputs = {{"rate_loss", rate_loss}, {"smooth_eps", smooth_eps}, {"kappa", kappa}};
    rep.value = rate_loss;
    rep.preconditions.push_back(make_pre("kappa <= 0.15", 0.15 - kappa));
    rep.vacuous = rate_loss >= 1.0 || smooth_eps >= 1.0;
    return rep;
}

BoundReport kr_recursive(double n_bits, int64_t f, int64_t r) {
    if (!(n_bits >= 2.0)) throw std::domain_error("kr_recursive: n must be >= 2");
    if (f < 1) throw std::domain_error("kr_recursive: f must be >= 1");
    if (r < 2) throw std::domain_error("kr_recursive: r must be >= 2");

    double rd = static_cast<double>(r);
    double exponent = std::pow(0.75, static_cast<double>(f));
    double raw = std::exp2(exponent * std::log2(n_bits));
    // Snap to the nearest integer when within rounding noise, then floor.
    double snapped = std::round(raw);
    double sample_size =
        (std::abs(raw - snapped) <= 4.0 * std::abs(raw) * 1e-16) ? snapped : std::floor(raw);

    double rate_loss = 5.0 * static_cast<double>(f) * std::log2(rd) / std::pow(rd, 0.25);
    double smooth_eps = 5.0 * static_cast<double>(f) * std::exp2(-std::sqrt(rd) / 8.0);

    BoundReport rep;
    rep.params = {{"n_bits", n_bits}, {"f", static_cast<double>(f)}, {"r", rd}};
    rep.outputs = {{"sample_size", sample_size}, {"rate_loss", rate_loss},
                   {"smooth_eps", smooth_eps}};
    rep.value = rate_loss;
    rep.preconditions.push_back(
        make_pre("sample_size >= r^4", sample_size - std::pow(rd, 4.0)));
    rep.vacuous = rate_loss >= 1.0 || smooth_eps >= 1.0;
    return rep;
}

BoundReport listdecode_extractor_threshold(int64_t n, double delta, double L, double eps) {
    if (n < 1) throw std::domain_error("listdecode_extractor_threshold: n must be >= 1");
    if (!(delta >= 0.0 && delta <= 0.5))
        throw std::domain_error("listdecode_extractor_threshold: delta must be in [0,1/2]");
    if (!(L >= 1.0)) throw std::domain_error("listdecode_extractor_threshold: L must be >= 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("listdecode_extractor_threshold: eps must be in (0,1)");

    double ell = binary_entropy(delta) * static_cast<double>(n) + std::log2(L) +
                 std::log2(2.0 / eps);
    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"delta", delta}, {"L", L}, {"eps", eps}};
    rep.outputs = {{"ell", ell}};
    rep.value = ell;
    rep.vacuous = ell <= 0.0;
    return rep;
}

BoundReport kt_lift(double ell, double eps) {
    if (!(ell >= 0.0)) throw std::domain_error("kt_lift: ell must be >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("kt_lift: eps must be in (0,1)");
    double lifted = ell + std::log2(1.0 / eps);
    double err = 3.0 * std::sqrt(eps);
    BoundReport rep;
    rep.params = {{"ell", ell}, {"eps", eps}};
    rep.outputs = {{"ell", lifted}, {"quantum_error", err}};
    rep.value = lifted;
    rep.vacuous = err >= 1.0;
    return rep;
}

namespace {

// eps > 2k^2/2^n, evaluated in log form so huge n cannot overflow.
Precondition xor_code_eps_precondition(int64_t n, int64_t k, double eps) {
    double bound_log2 = 1.0 + 2.0 * std::log2(static_cast<double>(k)) - static_cast<double>(n);
    double bound = std::exp2(bound_log2);  // underflows to 0 for large n
    Precondition p = make_pre("eps > 2k^2/2^n", eps - bound, /*strict=*/true);
    if (std::log2(eps) > bound_log2) p.satisfied = true;
    return p;
}

}  // namespace

BoundReport xor_extractor_threshold(int64_t n, int64_t k, double eps) {
    if (k < 1 || k > n) throw std::domain_error("xor_extractor_threshold: need 1 <= k <= n");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("xor_extractor_threshold: eps must be in (0,1)");

    double arg = std::log(2.0 / eps) / static_cast<double>(k);
    double ell = std::numeric_limits<double>::quiet_NaN();
    if (arg <= 1.0)
        ell = binary_entropy(arg) * static_cast<double>(n) + 4.0 * std::log2(1.0 / eps) + 3.0;
    double qerr = 3.0 * std::sqrt(eps);

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"eps", eps}};
    rep.outputs = {{"ell", ell}, {"quantum_error", qerr}, {"h_arg", arg}};
    rep.value = ell;
    rep.preconditions.push_back(xor_code_eps_precondition(n, k, eps));
    rep.preconditions.push_back(
        make_pre("k >= 2 ln(2/eps)", static_cast<double>(k) - 2.0 * std::log(2.0 / eps)));
    rep.vacuous = !(ell > 0.0) || qerr >= 1.0;
    return rep;
}

BoundReport lemma42_params(int64_t n, int64_t k, double eps) {
    if (k < 1 || k > n) throw std::domain_error("lemma42_params: need 1 <= k <= n");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("lemma42_params: eps must be in (0,1)");

    double delta = std::log(2.0 / eps) / static_cast<double>(k);
    double L = std::ceil(4.0 / (eps * eps));

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"eps", eps}};
    rep.outputs = {{"delta", delta}, {"L", L}};
    rep.value = delta;
    rep.preconditions.push_back(xor_code_eps_precondition(n, k, eps));
    return rep;
}

BoundReport main_sampling_threshold(int64_t n, int64_t k, double p) {
    if (k < 1 || k > n) throw std::domain_error("main_sampling_threshold: need 1 <= k <= n");
    if (!(p > 0.0 && p <= 1.0))
        throw std::domain_error("main_sampling_threshold: p must be in (0,1]");

    double log_inv_p = std::log2(1.0 / p);
    double arg = 6.0 / static_cast<double>(k) * std::log2(17.0 / p);
    double required = std::numeric_limits<double>::quiet_NaN();
    if (arg >= 0.0 && arg <= 1.0)
        required = binary_entropy(arg) * static_cast<double>(n) + 8.0 * std::log2(12.0 / p) + 3.0;

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"p", p}};
    rep.outputs = {{"required_hmin", required}, {"log_inv_p", log_inv_p}, {"h_arg", arg}};
    rep.value = required;
    // Compare 12*log2(1/p) <= k - 60 to keep the boundary free of the k/12
    // division rounding; the reported margin is in natural units.
    double scaled_margin = (static_cast<double>(k) - 60.0) - 12.0 * log_inv_p;
    Precondition rate_pre;
    rate_pre.name = "log2(1/p) <= k/12 - 5";
    rate_pre.satisfied = scaled_margin >= 0.0;
    rate_pre.margin = scaled_margin / 12.0;
    rep.preconditions.push_back(rate_pre);
    rep.preconditions.push_back(make_pre("h_arg <= 1/2", 0.5 - arg));
    rep.vacuous = log_inv_p <= 0.0;
    return rep;
}

BoundReport corollary1_bound(int64_t n, int64_t k, double c) {
    if (k < 1 || k > n) throw std::domain_error("corollary1_bound: need 1 <= k <= n");
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("corollary1_bound: c must be in [0,1]");

    double x = binary_entropy_inv(c / 2.0);
    double sampled = x / 6.0 * static_cast<double>(k) - 5.0;

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"c", c}};
    rep.outputs = {{"sampled_hmin", sampled}, {"h_inv_half_c", x}};
    rep.value = sampled;
    rep.vacuous = sampled <= 0.0;
    return rep;
}

BoundReport best_sampled_rate(int64_t n, int64_t k, double hmin) {
    if (k < 1 || k > n) throw std::domain_error("best_sampled_rate: need 1 <= k <= n");
    if (!(hmin >= 0.0 && hmin <= static_cast<double>(n)))
        throw std::domain_error("best_sampled_rate: need 0 <= hmin <= n");

    double cap = static_cast<double>(k) / 12.0 - 5.0;
    auto required = [&](double log_inv_p) {
        return main_sampling_threshold(n, k, std::exp2(-log_inv_p)).output("required_hmin");
    };

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"hmin", hmin}};
    rep.preconditions.push_back(make_pre("k/12 - 5 >= 0", cap));
    if (cap < 0.0 || !(required(0.0) <= hmin)) {
        rep.outputs = {{"max_log_inv_p", 0.0}};
        rep.value = 0.0;
        rep.vacuous = true;
        return rep;
    }

    double lo = 0.0, hi = cap;
    if (required(cap) <= hmin) {
        lo = cap;
    } else {
        for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
            double mid = 0.5 * (lo + hi);
            if (required(mid) <= hmin)
                lo = mid;
            else
                hi = mid;
        }
    }
    rep.outputs = {{"max_log_inv_p", lo}};
    rep.value = lo;
    rep.vacuous = lo <= 0.0;
    return rep;
}

BoundReport rac_success_bound(int64_t n, int64_t m, int64_t k) {
    if (m < 0 || m > n) throw std::domain_error("rac_success_bound: need 0 <= m <= n");
    if (k < 1 || k > n) throw std::domain_error("rac_success_bound: need 1 <= k <= n");

    double eps = 1.0 - static_cast<double>(m) / static_cast<double>(n);
    BoundReport cor1 = corollary1_bound(n, k, eps);
    double exponent = cor1.value;
    double p_max = std::exp2(-exponent);

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"m", static_cast<double>(m)},
                  {"k", static_cast<double>(k)}};
    rep.outputs = {{"p_max", p_max}, {"entropy_rate", eps}, {"sampled_hmin", exponent}};
    rep.value = p_max;
    rep.vacuous = p_max >= 1.0;
    return rep;
}

BoundReport brw_bound(int64_t n, int64_t m, int64_t k, double eta, double c_eta) {
    if (!(eta > kTwoLn2)) throw std::domain_error("brw_bound: eta must exceed 2 ln 2");
    if (m < 0 || m > n) throw std::domain_error("brw_bound: need 0 <= m <= n");
    if (k < 1) throw std::domain_error("brw_bound: k must be >= 1");
    if (!(c_eta > 0.0)) throw std::domain_error("brw_bound: c_eta must be > 0");

    double radicand = eta * static_cast<double>(m) / static_cast<double>(n);
    double value = c_eta * std::pow(0.5 + 0.5 * std::sqrt(radicand), static_cast<double>(k));

    BoundReport rep;
    rep.params = {{"n", static_cast<double>(n)}, {"m", static_cast<double>(m)},
                  {"k", static_cast<double>(k)}, {"eta", eta}, {"c_eta", c_eta}};
    rep.outputs = {{"p_max", value}, {"radicand", radicand}};
    rep.value = value;
    rep.vacuous = radicand >= 1.0 || value >= 1.0;
    rep.notes.push_back("c_eta supplied by caller; comparison non-rigorous");
    return rep;
}

double nayak_max_p(int64_t n, int64_t m) {
    if (n < 1) throw std::domain_error("nayak_max_p: n must be >= 1");
    if (m < 0 || m > n) throw std::domain_error("nayak_max_p: need 0 <= m <= n");
    if (m >= n) return 1.0;
    double ratio = 1.0 - static_cast<double>(m) / static_cast<double>(n);
    return 1.0 - binary_entropy_inv(ratio);
}

double smoothness_floor(SamplingMode mode, int64_t n, int64_t k) {
    if (n < 1 || k < 1) throw std::domain_error("smoothness_floor: counts must be >= 1");
    if (k > n) throw std::domain_error("smoothness_floor: need k <= n");
    double kd = static_cast<double>(k);
    if (mode == SamplingMode::Blockwise)
        return 3.0 * std::exp(-0.15 * kd * kd / (8.0 * static_cast<double>(n)));
    return 5.0 * std::exp2(-std::pow(kd, 0.125) / 8.0);
}

AuditReport inequality_audit(int64_t k_max, const std::vector<double>& c_grid) {
    if (k_max < 1) throw std::domain_error("inequality_audit: k_max must be >= 1");
    AuditReport rep;

    auto fail = [&](std::string check, int64_t k, double c, double lhs, double rhs) {
        rep.passed = false;
        rep.violation = AuditViolation{std::move(check), k, c, lhs, rhs};
    };

    for (int64_t k = 1; k <= k_max; ++k) {
        double kd = static_cast<double>(k);
        double lhs = 5.0 * kd / 12.0;
        double rhs = std::log2(17.0 * kd) - 5.0;
        ++rep.checks;
        if (lhs < rhs) {
            fail("5k/12 >= log2(17k) - 5", k, 0.0, lhs, rhs);
            return rep;
        }
    }

    for (int64_t k = 1; k <= k_max; ++k) {
        double tail = binomial_tail_below(k, k / 4);
        double bound = std::exp(-static_cast<double>(k) / 8.0);
        ++rep.checks;
        if (tail > bound) {
            fail("binomial_tail(k, k/4) <= e^(-k/8)", k, 0.0, tail, bound);
            return rep;
        }
    }

    const double slack = 1e-10;
    for (double c : c_grid) {
        double xstar = binary_entropy_inv(c / 2.0);
        for (int64_t k = 1; k <= k_max; ++k) {
            double kd = static_cast<double>(k);
            double log_inv_p = xstar * kd / 6.0 - 5.0;
            ++rep.checks;
            if (log_inv_p > kd / 12.0 - 5.0 + slack) {
                fail("log2(1/p) <= k/12 - 5", k, c, log_inv_p, kd / 12.0 - 5.0);
                return rep;
            }
            if (log_inv_p <= 0.0) continue;  // p >= 1: instance carries no guarantee
            double arg = 6.0 / kd * (std::log2(17.0) + log_inv_p);
            if (arg < 0.0 || arg > 0.5 + slack) {
                fail("h_arg in [0, 1/2]", k, c, arg, 0.5);
                return rep;
            }
            double h = binary_entropy(std::min(arg, 0.5));
            if (h > c / 2.0 + slack) {
                fail("H(h_arg) <= c/2", k, c, h, c / 2.0);
                return rep;
            }
            // Full threshold at the minimal n = k.
            double required = h * kd + 8.0 * (std::log2(12.0) + log_inv_p) + 3.0;
            if (required > c * kd + slack) {
                fail("required_hmin <= c*n at n=k", k, c, required, c * kd);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace qsv
