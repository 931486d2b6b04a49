#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hornvol {

using Rational = mpq_class;
using BigInt = mpz_class;
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

// Canonical "p/q" rendering (integers print without a denominator).
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Accepts "p", "p/q", "-p/q" and finite decimals such as "2.5".
Rational parse_rational(const std::string& text);

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }

inline Rational abs_of(const Rational& q) { return Rational(abs(q)); }

// Converts an integral rational to int64, throwing if it is not integral or overflows.
std::int64_t to_int64(const Rational& q);
std::int64_t to_int64(const BigInt& z);

Rational pow_int(const Rational& base, unsigned exponent);

}  // namespace hornvol
