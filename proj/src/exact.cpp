#include "qsampler/exact.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsampler {

int ceil_log2(const BigInt& x) {
    if (x <= 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    if (x == 1) return 0;
    BigInt m = x - 1;
    return static_cast<int>(boost::multiprecision::msb(m)) + 1;
}

BigInt int_pow(const BigInt& base, unsigned exp) {
    BigInt result = 1;
    BigInt b = base;
    for (unsigned e = exp; e > 0; e >>= 1) {
        if (e & 1u) result *= b;
        if (e > 1) b *= b;
    }
    return result;
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite value");
    return Rational(x);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::string rational_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace qsampler
