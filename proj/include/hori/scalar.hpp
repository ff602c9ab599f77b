#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hori {

// Exact rational coefficients. cpp_rational keeps the canonical reduced
// form with positive denominator, which we rely on for normal-form equality.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// The two-argument cpp_rational constructor misbehaves on boost 1.74,
// so all n/d construction goes through exact division.
inline Scalar make_scalar(long long num, long long den = 1)
{
    return Scalar(num) / Scalar(den);
}

std::string scalar_to_string(const Scalar& s);

} // namespace hori
