#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace rvi {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(const Int& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

// natural log of a positive rational, evaluated in double via num/den split
// so huge numerators do not overflow
inline double log_rat(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    auto log_int = [](const Int& n) {
        if (n <= Int(1)) return 0.0;
        const std::size_t bits = boost::multiprecision::msb(n);
        if (bits < 500) return std::log(n.template convert_to<double>());
        const Int hi = n >> (bits - 400);
        return std::log(hi.template convert_to<double>()) +
               double(bits - 400) * std::log(2.0);
    };
    return log_int(num) - log_int(den);
}

inline std::string rat_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

// scalar adapters shared by the rational and floating instantiations
template <class S> struct scalar_traits;

template <> struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_int(long v) { return Rat(v); }
    static double dbl(const Rat& v) { return to_double(v); }
};

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return double(v); }
    static double dbl(double v) { return v; }
};

}  // namespace rvi
