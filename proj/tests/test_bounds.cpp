#include <cmath>

#include "doctest.h"
#include "qsv/bounds.hpp"
#include "qsv/entropy.hpp"

using namespace qsv;

// Reference values computed independently with 50-digit arithmetic.
namespace {
constexpr double kKr1Kappa = 0.14925373134328358;
constexpr double kKr1RateLoss = 1.1191525658419135;
constexpr double kKr1SmoothEps = 2.7589834279313091;
constexpr double kKr1bRateLoss = 3.6643856189774725;
constexpr double kXorExtEll = 109754.07502126029;
constexpr double kMainRequired = 367665.18642737291;
constexpr double kMainP1Required = 246319.73642137439;
constexpr double kCor1K600 = 6.0027864438359551;
constexpr double kCor1K6000 = 36.692690273656696;
constexpr double kBestRateFullEntropy = 92.639719635680393;
constexpr double kRacPmax6000 = 9.0032561431147212e-12;
constexpr double kBrw1005020 = 0.18195984870778065;
constexpr double kNayak21 = 0.88997213556164045;
constexpr double kFloorBlock1e6 = 2.9442740632433313;
constexpr double kFloorBlock100 = 0.46006490053478539;
constexpr double kFloorRec256 = 4.2044820762685727;
constexpr double kLdx100 = 64.991595816452800;
}  // namespace

TEST_CASE("kr_blockwise") {
    BoundReport r = kr_blockwise(100, 10, 67, 0.1);
    CHECK(r.output("kappa") == doctest::Approx(kKr1Kappa).epsilon(1e-12));
    CHECK(r.output("rate_loss") == doctest::Approx(kKr1RateLoss).epsilon(1e-12));
    CHECK(r.output("smooth_eps") == doctest::Approx(kKr1SmoothEps).epsilon(1e-12));
    CHECK(r.precondition("kappa <= 0.15").satisfied);
    CHECK(r.vacuous);  // smoothness error far above 1 at this scale

    BoundReport fail = kr_blockwise(100, 10, 60, 0.1);
    CHECK_FALSE(fail.precondition("kappa <= 0.15").satisfied);
    CHECK(fail.precondition("kappa <= 0.15").margin ==
          doctest::Approx(0.15 - 1.0 / 6.0).epsilon(1e-12));

    BoundReport big = kr_blockwise(1000000, 10, 1000000, 1.0);
    CHECK(big.output("kappa") == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(big.output("rate_loss") == doctest::Approx(kKr1bRateLoss).epsilon(1e-12));

    CHECK_THROWS_AS(kr_blockwise(10, 10, 11, 0.1), std::domain_error);
    CHECK_THROWS_AS(kr_blockwise(10, 10, 5, 0.0), std::domain_error);
}

TEST_CASE("kr_recursive") {
    BoundReport r = kr_recursive(std::exp2(40.0), 1, 256);
    CHECK(r.output("sample_size") == std::exp2(30.0));
    CHECK(r.output("rate_loss") == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(r.output("smooth_eps") == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(r.vacuous);
    // 2^30 sampled bits sit below 256^4 = 2^32: the size gate fails here
    CHECK_FALSE(r.precondition("sample_size >= r^4").satisfied);

    BoundReport r2 = kr_recursive(std::exp2(64.0), 2, 16);
    CHECK(r2.output("sample_size") == std::exp2(36.0));
    CHECK(r2.output("rate_loss") == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(r2.precondition("sample_size >= r^4").satisfied);

    BoundReport r3 = kr_recursive(16.0, 1, 16);
    CHECK(r3.output("sample_size") == 8.0);
    CHECK_FALSE(r3.precondition("sample_size >= r^4").satisfied);

    CHECK_THROWS_AS(kr_recursive(16.0, 0, 16), std::domain_error);
    CHECK_THROWS_AS(kr_recursive(16.0, 1, 1), std::domain_error);
}

TEST_CASE("listdecode_extractor_threshold") {
    CHECK(listdecode_extractor_threshold(10, 0.0, 1.0, 0.5).value ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(listdecode_extractor_threshold(100, 0.11, 16.0, std::exp2(-10.0)).value ==
          doctest::Approx(kLdx100).epsilon(1e-12));
    CHECK(listdecode_extractor_threshold(10, 0.5, 4.0, 0.25).value ==
          doctest::Approx(15.0).epsilon(1e-12));
    CHECK_THROWS_AS(listdecode_extractor_threshold(10, 0.6, 4.0, 0.25), std::domain_error);
    CHECK_THROWS_AS(listdecode_extractor_threshold(10, 0.5, 0.5, 0.25), std::domain_error);
    CHECK_THROWS_AS(listdecode_extractor_threshold(10, 0.5, 4.0, 1.0), std::domain_error);
}

TEST_CASE("kt_lift") {
    BoundReport r = kt_lift(10.0, std::exp2(-20.0));
    CHECK(r.output("ell") == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(r.output("quantum_error") == doctest::Approx(3.0 * std::exp2(-10.0)).epsilon(1e-14));
    CHECK_FALSE(r.vacuous);

    BoundReport v = kt_lift(0.0, 0.25);
    CHECK(v.output("ell") == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v.output("quantum_error") == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(v.vacuous);

    BoundReport big = kt_lift(100.0, std::exp2(-40.0));
    CHECK(big.output("ell") == doctest::Approx(140.0).epsilon(1e-14));
    CHECK(big.output("quantum_error") ==
          doctest::Approx(3.0 * std::exp2(-20.0)).epsilon(1e-14));
}

TEST_CASE("xor_extractor_threshold") {
    BoundReport r = xor_extractor_threshold(1000000, 1000, std::exp2(-20.0));
    CHECK(r.output("ell") == doctest::Approx(kXorExtEll).epsilon(1e-10));
    CHECK(r.output("quantum_error") == doctest::Approx(3.0 * std::exp2(-10.0)).epsilon(1e-14));
    CHECK(r.preconditions_ok());

    BoundReport fail = xor_extractor_threshold(20, 4, std::exp2(-20.0));
    CHECK_FALSE(fail.precondition("k >= 2 ln(2/eps)").satisfied);
    CHECK(fail.precondition("k >= 2 ln(2/eps)").margin ==
          doctest::Approx(4.0 - 29.112181583517703).epsilon(1e-12));

    // H argument above 1/2 is never clipped; the same ledger entry fails.
    BoundReport wide = xor_extractor_threshold(20, 20, std::exp2(-20.0));
    CHECK(wide.output("h_arg") > 0.5);
    CHECK_FALSE(wide.precondition("k >= 2 ln(2/eps)").satisfied);
    CHECK(std::isfinite(wide.output("ell")));

    // H argument above 1 cannot be evaluated at all.
    BoundReport nan = xor_extractor_threshold(20, 2, std::exp2(-20.0));
    CHECK(nan.output("h_arg") > 1.0);
    CHECK(std::isnan(nan.output("ell")));
    CHECK(nan.vacuous);
}

TEST_CASE("lemma42_params") {
    BoundReport r = lemma42_params(10, 2, 0.5);
    CHECK(r.output("delta") == doctest::Approx(0.69314718055994531).epsilon(1e-14));
    CHECK(r.output("L") == 16.0);
    CHECK(r.precondition("eps > 2k^2/2^n").satisfied);

    BoundReport boundary = lemma42_params(4, 2, 0.5);  // 2k^2/2^n = 1/2 exactly
    CHECK_FALSE(boundary.precondition("eps > 2k^2/2^n").satisfied);

    BoundReport r3 = lemma42_params(100, 10, 0.25);
    CHECK(r3.output("delta") == doctest::Approx(0.20794415416798359).epsilon(1e-14));
    CHECK(r3.output("L") == 64.0);
}

TEST_CASE("main_sampling_threshold") {
    BoundReport r = main_sampling_threshold(1000000, 1200, std::exp2(-10.0));
    CHECK(r.output("required_hmin") == doctest::Approx(kMainRequired).epsilon(1e-10));
    CHECK(r.precondition("log2(1/p) <= k/12 - 5").satisfied);
    CHECK(r.precondition("log2(1/p) <= k/12 - 5").margin == doctest::Approx(85.0).epsilon(1e-12));
    CHECK_FALSE(r.vacuous);

    BoundReport fail = main_sampling_threshold(1000000, 60, 0.5);
    CHECK_FALSE(fail.precondition("log2(1/p) <= k/12 - 5").satisfied);

    BoundReport p1 = main_sampling_threshold(1000000, 600, 1.0);
    CHECK(p1.output("log_inv_p") == 0.0);
    CHECK(p1.output("required_hmin") == doctest::Approx(kMainP1Required).epsilon(1e-10));
    CHECK(p1.vacuous);

    CHECK_THROWS_AS(main_sampling_threshold(10, 20, 0.5), std::domain_error);
    CHECK_THROWS_AS(main_sampling_threshold(10, 5, 0.0), std::domain_error);
    CHECK_THROWS_AS(main_sampling_threshold(10, 5, 1.5), std::domain_error);
}

TEST_CASE("main_sampling_threshold boundary is decided exactly") {
    // log2(1/p) = k/12 - 5 exactly at k = 120, p = 2^-5.
    BoundReport edge = main_sampling_threshold(1000, 120, std::exp2(-5.0));
    CHECK(edge.precondition("log2(1/p) <= k/12 - 5").satisfied);
    CHECK(edge.precondition("log2(1/p) <= k/12 - 5").margin == 0.0);
    BoundReport past = main_sampling_threshold(1000, 120, std::exp2(-5.0) * 0.999);
    CHECK_FALSE(past.precondition("log2(1/p) <= k/12 - 5").satisfied);
}

TEST_CASE("main_sampling_threshold monotone in log2(1/p)") {
    for (int64_t k : {120, 600, 1200}) {
        double prev = -1.0;
        double cap = static_cast<double>(k) / 12.0 - 5.0;
        for (int i = 0; i <= 40; ++i) {
            double L = cap * static_cast<double>(i) / 40.0;
            double req = main_sampling_threshold(1000000, k, std::exp2(-L)).value;
            CHECK(req >= prev - 1e-9);
            prev = req;
        }
    }
}

TEST_CASE("corollary1_bound") {
    CHECK(corollary1_bound(1000, 600, 1.0).value == doctest::Approx(kCor1K600).epsilon(1e-10));
    BoundReport zero = corollary1_bound(1000, 10, 0.0);
    CHECK(zero.value == doctest::Approx(-5.0).epsilon(1e-14));
    CHECK(zero.vacuous);
    CHECK(corollary1_bound(6000, 6000, 0.5).value ==
          doctest::Approx(kCor1K6000).epsilon(1e-10));
    CHECK_THROWS_AS(corollary1_bound(10, 5, 1.5), std::domain_error);
}

TEST_CASE("corollary1 threshold chain against the main theorem") {
    for (int64_t k : {100, 500, 1000}) {
        for (double c : {0.2, 0.4, 0.6, 0.8, 1.0}) {
            double exponent = corollary1_bound(10 * k, k, c).value;
            if (exponent <= 0.0) continue;  // vacuous instance
            for (int64_t n : {k, 2 * k, 10 * k}) {
                double required = main_sampling_threshold(n, k, std::exp2(-exponent)).value;
                CHECK(required <= c * static_cast<double>(n) + 1e-9);
            }
        }
    }
}

TEST_CASE("best_sampled_rate") {
    // With full entropy the additive threshold terms still bite before the
    // k/12 - 5 cap: the supremum sits below 95.
    BoundReport full = best_sampled_rate(1000000, 1200, 1000000.0);
    CHECK(full.value == doctest::Approx(kBestRateFullEntropy).epsilon(1e-7));

    BoundReport none = best_sampled_rate(1000000, 1200, 0.0);
    CHECK(none.value == 0.0);
    CHECK(none.vacuous);

    BoundReport invert = best_sampled_rate(1000000, 1200, kMainRequired);
    CHECK(invert.value == doctest::Approx(10.0).epsilon(1e-6));

    // Small k: cap below zero means no usable rate at all.
    CHECK(best_sampled_rate(100, 30, 50.0).vacuous);

    CHECK_THROWS_AS(best_sampled_rate(100, 10, 200.0), std::domain_error);
}

TEST_CASE("rac_success_bound") {
    BoundReport r = rac_success_bound(12000, 6000, 6000);
    CHECK(r.value == doctest::Approx(kRacPmax6000).epsilon(1e-9));
    CHECK_FALSE(r.vacuous);

    BoundReport full = rac_success_bound(100, 100, 10);
    CHECK(full.vacuous);  // eps = 0 gives exponent -5, p_max = 32

    BoundReport nostore = rac_success_bound(600, 0, 600);
    CHECK(nostore.value == doctest::Approx(std::exp2(-kCor1K600)).epsilon(1e-10));
}

TEST_CASE("rac_success_bound monotonicity") {
    // Strictly decreasing in k, non-decreasing in m (non-vacuous region).
    double prev = 1.0;
    for (int64_t k = 600; k <= 1400; k += 200) {
        double v = rac_success_bound(10000, 2000, k).value;
        CHECK(v < prev);
        prev = v;
    }
    prev = 0.0;
    for (int64_t m = 0; m <= 8000; m += 2000) {
        double v = rac_success_bound(10000, m, 1000).value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("brw_bound") {
    BoundReport zero = brw_bound(100, 0, 20, 1.4, 1.0);
    CHECK(zero.value == std::exp2(-20.0));
    CHECK_FALSE(zero.vacuous);

    BoundReport mid = brw_bound(100, 50, 20, 1.4, 1.0);
    CHECK(mid.value == doctest::Approx(kBrw1005020).epsilon(1e-12));

    BoundReport sat = brw_bound(100, 80, 20, 1.4, 1.0);
    CHECK(sat.output("radicand") == doctest::Approx(1.12).epsilon(1e-12));
    CHECK(sat.vacuous);

    CHECK_FALSE(mid.notes.empty());  // non-rigorous marker always present
    CHECK_THROWS_AS(brw_bound(100, 50, 20, 1.3, 1.0), std::domain_error);
}

TEST_CASE("nayak_max_p") {
    CHECK(nayak_max_p(2, 1) == doctest::Approx(kNayak21).epsilon(1e-10));
    CHECK(nayak_max_p(2, 1) >= 0.8899);
    CHECK(nayak_max_p(2, 1) <= 0.8900);
    CHECK(nayak_max_p(7, 7) == 1.0);
    CHECK(nayak_max_p(9, 0) == doctest::Approx(0.5).epsilon(1e-12));
    double prev = 0.0;
    for (int64_t m = 0; m <= 50; m += 5) {
        double v = nayak_max_p(50, m);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK_THROWS_AS(nayak_max_p(5, 6), std::domain_error);
}

TEST_CASE("smoothness_floor") {
    CHECK(smoothness_floor(SamplingMode::Blockwise, 1000000, 1000) ==
          doctest::Approx(kFloorBlock1e6).epsilon(1e-12));
    CHECK(smoothness_floor(SamplingMode::Blockwise, 1000000, 1000) > 1.0);
    CHECK(smoothness_floor(SamplingMode::Recursive, 1000000, 256) ==
          doctest::Approx(kFloorRec256).epsilon(1e-12));
    CHECK(smoothness_floor(SamplingMode::Blockwise, 100, 100) ==
          doctest::Approx(kFloorBlock100).epsilon(1e-12));
    CHECK_THROWS_AS(smoothness_floor(SamplingMode::Blockwise, 10, 11), std::domain_error);
}

TEST_CASE("inequality_audit") {
    AuditReport rep = inequality_audit(2000, {0.05, 0.25, 0.5, 0.75, 1.0});
    CHECK(rep.passed);
    CHECK(rep.checks > 0);

    // Spot values behind check (i).
    CHECK(5.0 * 120.0 / 12.0 >= std::log2(17.0 * 120.0) - 5.0);
    CHECK(std::log2(17.0 * 120.0) - 5.0 == doctest::Approx(5.9943534368588579).epsilon(1e-12));
    CHECK(std::log2(17.0) - 5.0 == doctest::Approx(-0.91253715874966059).epsilon(1e-12));
    CHECK_THROWS_AS(inequality_audit(0, {0.5}), std::domain_error);
}

TEST_CASE("vacuous flag tracks the informative range") {
    for (int64_t m : {0, 20, 50, 80, 100}) {
        for (int64_t k : {1, 5, 20, 60}) {
            BoundReport cor2 = rac_success_bound(100, m, k);
            CHECK(cor2.vacuous == (cor2.value >= 1.0));
            BoundReport brw = brw_bound(100, m, k, 1.4, 1.0);
            CHECK(brw.vacuous ==
                  (brw.output("radicand") >= 1.0 || brw.value >= 1.0));
            BoundReport cor1 = corollary1_bound(100, k, static_cast<double>(m) / 100.0);
            CHECK(cor1.vacuous == (cor1.value <= 0.0));
        }
    }
    for (double eps : {0.5, 0.01, 1e-6}) {
        BoundReport lift = kt_lift(4.0, eps);
        CHECK(lift.vacuous == (lift.output("quantum_error") >= 1.0));
    }
}
