#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qsampler {

// Exact arithmetic backing all combinatorial counts and spectral identities.
// Floating point never enters the closed-form paths.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Bits needed to address `x` distinct values: ceil(log2 x), with ceil_log2(1) = 0.
int ceil_log2(const BigInt& x);

/// base^exp in exact integer arithmetic.
BigInt int_pow(const BigInt& base, unsigned exp);

/// Exact rational value of a finite double (binary expansion, no rounding).
Rational exact_rational(double x);

double to_double(const Rational& r);

/// "num/den" in lowest terms; integers render without the "/1".
std::string rational_string(const Rational& r);

/// %.17g — round-trip safe in text outputs.
std::string format_double(double x);

} // namespace qsampler
