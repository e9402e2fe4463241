#pragma once
#include <gmpxx.h>
#include <string>

namespace clx {

using Rational = mpq_class;
using BigInt = mpz_class;

// "p/q" or "p"; canonicalized
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

// exact x^k for integer k >= 0
Rational pow(const Rational& x, unsigned long k);

} // namespace clx
