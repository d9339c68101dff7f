#pragma once

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ftlab/errors.hpp"

namespace ftlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is a dyadic rational.
inline BigRational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite input");
    if (x == 0.0) return BigRational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    const double scaled = std::ldexp(mant, 53); // integer by IEEE-754 double layout
    BigInt num(static_cast<long long>(scaled));
    const int shift = exp - 53;
    if (shift >= 0) return BigRational(num << shift, 1);
    return BigRational(num, BigInt(1) << (-shift));
}

inline double to_double(const BigRational& q) {
    return q.convert_to<double>();
}

// Smallest rational with denominator dividing max_den that is >= q.
inline BigRational ceil_to_denominator(const BigRational& q, const BigInt& max_den) {
    if (max_den <= 0) throw DomainError("ceil_to_denominator: max_den must be positive");
    const BigInt num = boost::multiprecision::numerator(q) * max_den;
    const BigInt den = boost::multiprecision::denominator(q);
    BigInt k = num / den;
    if (k * den < num) ++k; // ceil for positive q; q <= 0 not used here
    return BigRational(k, max_den);
}

inline std::string rational_to_string(const BigRational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigRational rational_from_string(const std::string& s);

} // namespace ftlab
