#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace vvmf {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string toString(const Rational& x);
std::string toString(const Integer& x);

/// Parses "p", "p/q" or "-p/q" (whitespace trimmed). Throws InputError.
Rational parseRational(std::string_view text);

bool isInteger(const Rational& x);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Representative of x mod 1 in [0, 1).
Rational fracPart(const Rational& x);

/// True when a and b agree mod 1.
bool congruentMod1(const Rational& a, const Rational& b);

Rational makeRational(std::int64_t num, std::int64_t den = 1);

/// Converts to a machine integer, throwing InternalError on overflow or a
/// non-integral value.
std::int64_t toInt64(const Rational& x);
std::int64_t toInt64(const Integer& x);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// ((a % m) + m) % m
std::int64_t mod64(std::int64_t a, std::int64_t m);

} // namespace vvmf
