#pragma once

#include <boost/rational.hpp>
#include <cstdint>

namespace qsv {

// Exact arithmetic path for small joints; denominators stay tiny (powers of
// two times subset counts), so 64-bit components are plenty.
using Rational = boost::rational<int64_t>;

template <class S>
struct scalar_traits {
    static S from_ratio(int64_t num, int64_t den) {
        return static_cast<S>(num) / static_cast<S>(den);
    }
    static double to_double(const S& v) { return static_cast<double>(v); }
    static constexpr bool exact = false;
};

template <>
struct scalar_traits<Rational> {
    static Rational from_ratio(int64_t num, int64_t den) { return Rational(num, den); }
    static double to_double(const Rational& v) {
        return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
    }
    static constexpr bool exact = true;
};

template <class S>
double to_double(const S& v) {
    return scalar_traits<S>::to_double(v);
}

}  // namespace qsv
