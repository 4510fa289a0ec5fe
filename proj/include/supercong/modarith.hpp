#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "supercong/errors.hpp"

namespace supercong {

using BigInt = boost::multiprecision::cpp_int;
// cpp_rational keeps values in lowest terms with a positive denominator,
// which is the canonical form every formatter below relies on.
using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::int64_t n);

// Primes in the half-open range [lo, hi), ascending.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

// A prime-power modulus p^r. All residue arithmetic in the library happens
// against one of these; keeping p^r < 2^31 lets products of two reduced
// residues fit in (unsigned) 64-bit before a single reduction.
struct PrimePowerModulus {
    std::int64_t p = 0;
    int r = 1;
    std::int64_t modulus = 0;

    PrimePowerModulus(std::int64_t p_, int r_);
};

// Value in [0, mod). Arithmetic between residues of different moduli is a
// programming error and asserts via PreconditionViolated.
struct Residue {
    std::int64_t value = 0;
    std::int64_t mod = 1;

    Residue() = default;
    Residue(std::int64_t v, std::int64_t m);

    Residue operator+(const Residue& o) const;
    Residue operator-(const Residue& o) const;
    Residue operator*(const Residue& o) const;
    Residue operator-() const;
    bool operator==(const Residue& o) const = default;
};

// Inverse of a mod m via extended Euclid; throws NotAUnit when gcd != 1.
std::int64_t mod_inverse_raw(std::int64_t a, std::int64_t m);

Residue mod_inverse(const Residue& x);

// Reduce an arbitrary integer into [0, mod).
Residue mod_reduce(const BigInt& x, std::int64_t mod);

// Reduce num/den mod m. Throws DenominatorNotInvertible when the denominator
// shares a factor with m (for prime-power m: when p divides it).
Residue reduce_rational(const Rational& q, std::int64_t mod);

BigInt factorial(int n);

// Binomial coefficient with the usual boundary convention: 0 whenever
// k < 0 or k > n. Requires n >= 0.
BigInt binomial(int n, int k);

} // namespace supercong
