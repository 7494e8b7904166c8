#include <cmath>

#include "doctest.h"
#include "qsv/entropy.hpp"

using namespace qsv;

// Reference values computed independently with 50-digit arithmetic.
namespace {
constexpr double kH011 = 0.49991595816452800;
constexpr double kHinvHalf = 0.11002786443835955;
}  // namespace

TEST_CASE("binary_entropy examples") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(kH011).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("binary_entropy symmetry on a dense grid") {
    for (int i = 0; i <= 10000; ++i) {
        double x = static_cast<double>(i) / 10000.0;
        CHECK(std::abs(binary_entropy(x) - binary_entropy(1.0 - x)) <= 1e-12);
    }
}

TEST_CASE("binary_entropy_inv examples and round trip") {
    CHECK(binary_entropy_inv(1.0) == 0.5);
    CHECK(binary_entropy_inv(0.0) == 0.0);
    CHECK(binary_entropy_inv(0.5) == doctest::Approx(kHinvHalf).epsilon(1e-10));
    CHECK_THROWS_AS(binary_entropy_inv(-0.1), std::domain_error);
    CHECK_THROWS_AS(binary_entropy_inv(1.1), std::domain_error);

    for (int i = 0; i <= 10000; ++i) {
        double x = 0.5 * static_cast<double>(i) / 10000.0;
        CHECK(std::abs(binary_entropy_inv(binary_entropy(x)) - x) <= 1e-10);
    }
}

TEST_CASE("hoeffding_tail") {
    CHECK(hoeffding_tail(8, 0.25) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(hoeffding_tail(123, 0.0) == 1.0);
    CHECK(hoeffding_tail(50, 0.1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(hoeffding_tail(0, 0.1), std::domain_error);
    CHECK_THROWS_AS(hoeffding_tail(5, -0.1), std::domain_error);
}

TEST_CASE("binomial_tail_below exact examples") {
    CHECK(binomial_tail_below(4, 1) == 5.0 / 16.0);
    CHECK(binomial_tail_below(8, 2) == 37.0 / 256.0);
    CHECK(binomial_tail_below(16, 4) == 2517.0 / 65536.0);
    CHECK(binomial_tail_below(16, 4) <= std::exp(-2.0));
    CHECK_THROWS_AS(binomial_tail_below(4, 5), std::domain_error);
    CHECK_THROWS_AS(binomial_tail_below(4, -1), std::domain_error);
    CHECK_THROWS_AS(binomial_tail_below(0, 0), std::domain_error);
}

TEST_CASE("binomial_tail_below complete sum is exactly 1") {
    for (int64_t k : {1, 7, 64, 65, 100, 1000}) CHECK(binomial_tail_below(k, k) == 1.0);
}

TEST_CASE("binomial_tail_below matches a Pascal-triangle oracle") {
    // Independent route: rows accumulated as exact doubles (k <= 30 keeps
    // every intermediate integral).
    std::vector<double> row{1.0, 1.0};
    for (int64_t k = 1; k <= 30; ++k) {
        double pow2 = std::exp2(static_cast<double>(k));
        double partial = 0.0;
        for (int64_t t = 0; t <= k; ++t) {
            partial += row[static_cast<size_t>(t)];
            CHECK(binomial_tail_below(k, t) ==
                  doctest::Approx(partial / pow2).epsilon(1e-14));
        }
        std::vector<double> next(static_cast<size_t>(k) + 2, 1.0);
        for (size_t j = 1; j <= static_cast<size_t>(k); ++j) next[j] = row[j - 1] + row[j];
        row = next;
    }
}

TEST_CASE("log-space path agrees with a long-double summation") {
    for (int64_t k = 65; k <= 80; ++k) {
        long double coeff = 1.0L, sum = 0.0L;
        int64_t threshold = k / 3;
        for (int64_t j = 0; j <= threshold; ++j) {
            if (j > 0) coeff = coeff * static_cast<long double>(k - j + 1) / j;
            sum += coeff;
        }
        long double expect = sum / std::pow(2.0L, static_cast<long double>(k));
        CHECK(binomial_tail_below(k, threshold) ==
              doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
    }
}

TEST_CASE("binomial tail beats the Chernoff bound on [1, 10^4]") {
    for (int64_t k = 1; k <= 10000; ++k) {
        CHECK(binomial_tail_below(k, k / 4) <= std::exp(-static_cast<double>(k) / 8.0));
    }
}

TEST_CASE("hamming_distance") {
    CHECK(hamming_distance(BitString::from_string("000"), BitString::from_string("000")) == 0);
    CHECK(hamming_distance(BitString::from_string("101"), BitString::from_string("010")) == 3);
    CHECK(hamming_distance(BitString::from_string("1100"), BitString::from_string("1010")) == 2);
    CHECK_THROWS_AS(
        hamming_distance(BitString::from_string("10"), BitString::from_string("100")),
        std::invalid_argument);
}

TEST_CASE("bitstring indexing conventions") {
    BitString x = BitString::from_string("101");
    CHECK(x.bit(1) == 1);
    CHECK(x.bit(2) == 0);
    CHECK(x.bit(3) == 1);
    CHECK(x.to_index() == 5);
    CHECK(BitString::from_index(5, 3) == x);
    CHECK_THROWS_AS(BitString::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(x.bit(0), std::out_of_range);
    CHECK_THROWS_AS(x.bit(4), std::out_of_range);

    Subset s({1, 3}, 3);
    CHECK(substring_index(x.to_index(), s) == 3);  // bits (1,1)
    CHECK(subset_parity(x.to_index(), s) == 0);
    CHECK(subset_parity(x.to_index(), Subset({1, 2}, 3)) == 1);
    CHECK_THROWS_AS(Subset({2, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(Subset({0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(Subset({4}, 3), std::invalid_argument);
}
