#include "supercong/modarith.hpp"

#include <limits>
#include <string>

namespace supercong {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(lo, 2); n < hi; ++n) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

PrimePowerModulus::PrimePowerModulus(std::int64_t p_, int r_) : p(p_), r(r_) {
    if (!is_prime(p)) {
        throw PreconditionViolated("modulus base " + std::to_string(p_) +
                                   " is not prime");
    }
    if (r < 1) {
        throw PreconditionViolated("modulus exponent must be >= 1");
    }
    constexpr std::int64_t kLimit = std::int64_t{1} << 31;
    modulus = 1;
    for (int i = 0; i < r; ++i) {
        if (modulus > kLimit / p) {
            throw PreconditionViolated("p^r exceeds the 2^31 residue limit");
        }
        modulus *= p;
    }
}

Residue::Residue(std::int64_t v, std::int64_t m) : mod(m) {
    if (m <= 0) throw PreconditionViolated("residue modulus must be positive");
    value = v % m;
    if (value < 0) value += m;
}

namespace {
void check_same_mod(const Residue& a, const Residue& b) {
    if (a.mod != b.mod) {
        throw PreconditionViolated("mixed moduli in residue arithmetic");
    }
}
} // namespace

Residue Residue::operator+(const Residue& o) const {
    check_same_mod(*this, o);
    std::int64_t s = value + o.value;
    if (s >= mod) s -= mod;
    return Residue{s, mod};
}

Residue Residue::operator-(const Residue& o) const {
    check_same_mod(*this, o);
    std::int64_t s = value - o.value;
    if (s < 0) s += mod;
    return Residue{s, mod};
}

Residue Residue::operator*(const Residue& o) const {
    check_same_mod(*this, o);
    // Both factors are < 2^31, so the product fits in int64.
    return Residue{(value * o.value) % mod, mod};
}

Residue Residue::operator-() const {
    return Residue{value == 0 ? 0 : mod - value, mod};
}

std::int64_t mod_inverse_raw(std::int64_t a, std::int64_t m) {
    if (m <= 0) throw PreconditionViolated("inverse modulus must be positive");
    std::int64_t r0 = m, r1 = ((a % m) + m) % m;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) {
        throw NotAUnit("no inverse: gcd(" + std::to_string(a) + ", " +
                       std::to_string(m) + ") = " + std::to_string(r0));
    }
    return ((t0 % m) + m) % m;
}

Residue mod_inverse(const Residue& x) {
    return Residue{mod_inverse_raw(x.value, x.mod), x.mod};
}

Residue mod_reduce(const BigInt& x, std::int64_t mod) {
    if (mod <= 0) throw PreconditionViolated("modulus must be positive");
    BigInt v = x % mod;
    if (v < 0) v += mod;
    return Residue{v.convert_to<std::int64_t>(), mod};
}

Residue reduce_rational(const Rational& q, std::int64_t mod) {
    BigInt den = boost::multiprecision::denominator(q);
    BigInt g = boost::multiprecision::gcd(den, BigInt(mod));
    if (g != 1) {
        throw DenominatorNotInvertible(
            "denominator shares factor " + g.convert_to<std::string>() +
            " with modulus " + std::to_string(mod));
    }
    Residue num = mod_reduce(boost::multiprecision::numerator(q), mod);
    Residue d = mod_reduce(den, mod);
    return num * mod_inverse(d);
}

BigInt factorial(int n) {
    if (n < 0) throw PreconditionViolated("factorial of negative argument");
    BigInt out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt binomial(int n, int k) {
    if (n < 0) throw PreconditionViolated("binomial needs n >= 0");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (int i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

} // namespace supercong
