#include "supercong/nestedsums.hpp"

#include <algorithm>
#include <string>

#include "supercong/enumerate.hpp"
#include "supercong/errors.hpp"

namespace supercong {

namespace {

void check_budget(const BigInt& estimate, std::int64_t budget,
                  const char* what) {
    if (estimate > budget) {
        throw WorkBudgetExceeded(std::string(what) + " estimate " +
                                 estimate.str() + " exceeds budget " +
                                 std::to_string(budget));
    }
}

std::int64_t pow_mod(std::int64_t base, int exp, std::int64_t mod) {
    std::int64_t out = 1 % mod;
    base %= mod;
    for (int i = 0; i < exp; ++i) out = out * base % mod;
    return out;
}

void validate_window(const WindowSpec& w) {
    if (w.alpha < 0 || w.kappa < 1 || !is_prime(w.p) || w.p < 5) {
        throw PreconditionViolated("window needs alpha >= 0, kappa >= 1 and a prime p >= 5");
    }
}

// inv[l] = l^{-1} mod `mod` for units l < len, 0 at multiples of p.
std::vector<std::int64_t> unit_inverses(std::int64_t len, std::int64_t p,
                                        std::int64_t mod) {
    std::vector<std::int64_t> inv(static_cast<std::size_t>(len), 0);
    for (std::int64_t l = 1; l < len; ++l) {
        if (l % p != 0) inv[static_cast<std::size_t>(l)] = mod_inverse_raw(l, mod);
    }
    return inv;
}

} // namespace

Rational mhs(std::int64_t n, const std::vector<int>& s) {
    if (n < 1) throw PreconditionViolated("mhs needs n >= 1");
    for (int e : s) {
        if (e < 1) throw PreconditionViolated("mhs exponents must be positive");
    }
    std::size_t d = s.size();
    std::vector<Rational> acc(d + 1, Rational(0));
    acc[0] = 1;
    for (std::int64_t k = 1; k < n; ++k) {
        for (std::size_t j = d; j >= 1; --j) {
            if (acc[j - 1] == 0) continue;
            BigInt kp = boost::multiprecision::pow(BigInt(k),
                                                   static_cast<unsigned>(s[j - 1]));
            acc[j] += acc[j - 1] / kp;
        }
    }
    return acc[d];
}

Residue mhs_mod(std::int64_t n, const std::vector<int>& s,
                const PrimePowerModulus& M, bool p_restricted) {
    if (n < 1) throw PreconditionViolated("mhs needs n >= 1");
    for (int e : s) {
        if (e < 1) throw PreconditionViolated("mhs exponents must be positive");
    }
    std::size_t d = s.size();
    if (static_cast<std::int64_t>(d) > n - 1) return Residue{0, M.modulus};
    if (d == 0) return Residue{1 % M.modulus, M.modulus};
    std::vector<std::int64_t> acc(d + 1, 0);
    acc[0] = 1 % M.modulus;
    for (std::int64_t k = 1; k < n; ++k) {
        if (k % M.p == 0) {
            if (!p_restricted) {
                throw NotAUnit("index " + std::to_string(k) +
                               " is divisible by " + std::to_string(M.p));
            }
            continue;
        }
        std::int64_t ik = mod_inverse_raw(k, M.modulus);
        for (std::size_t j = d; j >= 1; --j) {
            if (acc[j - 1] == 0) continue;
            std::int64_t w = pow_mod(ik, s[j - 1], M.modulus);
            acc[j] = (acc[j] + acc[j - 1] * w) % M.modulus;
        }
    }
    return Residue{acc[d], M.modulus};
}

Residue u_sum(const WindowSpec& w, const std::vector<int>& s,
              std::int64_t budget) {
    validate_window(w);
    if (s.empty()) throw PreconditionViolated("u_sum needs at least one exponent");
    for (int e : s) {
        if (e < 1) throw PreconditionViolated("u_sum exponents must be positive");
    }
    std::int64_t mod = w.p * w.p;
    std::int64_t lo = w.alpha * w.p, hi = (w.alpha + w.kappa) * w.p;
    std::vector<std::int64_t> units;
    for (std::int64_t l = lo + 1; l < hi; ++l) {
        if (l % w.p != 0) units.push_back(l);
    }
    int d = static_cast<int>(s.size());
    BigInt estimate = boost::multiprecision::pow(BigInt(units.size()),
                                                 static_cast<unsigned>(d));
    check_budget(estimate, budget, "u_sum");
    // powers[i][idx] = inv(units[idx])^{s_i} mod p^2
    std::vector<std::vector<std::int64_t>> powers(
        static_cast<std::size_t>(d),
        std::vector<std::int64_t>(units.size(), 0));
    for (std::size_t idx = 0; idx < units.size(); ++idx) {
        std::int64_t iv = mod_inverse_raw(units[idx], mod);
        for (int i = 0; i < d; ++i) {
            powers[static_cast<std::size_t>(i)][idx] =
                pow_mod(iv, s[static_cast<std::size_t>(i)], mod);
        }
    }
    std::vector<bool> used(units.size(), false);
    std::int64_t acc = 0;
    auto rec = [&](auto&& self, int i, std::int64_t prod) -> void {
        if (i == d) {
            acc = (acc + prod) % mod;
            return;
        }
        const auto& pw = powers[static_cast<std::size_t>(i)];
        for (std::size_t idx = 0; idx < units.size(); ++idx) {
            if (used[idx]) continue;
            used[idx] = true;
            self(self, i + 1, prod * pw[idx] % mod);
            used[idx] = false;
        }
    };
    rec(rec, 0, 1);
    return Residue{acc, mod};
}

Residue xi_sum(const WindowSpec& w, int n, std::int64_t budget) {
    validate_window(w);
    if (n < 2) throw PreconditionViolated("xi_sum needs n >= 2");
    std::int64_t mod = w.p * w.p;
    std::int64_t lo = w.alpha * w.p, hi = (w.alpha + w.kappa) * w.p;
    int len = n - 1;
    check_budget(binomial(static_cast<int>(w.kappa * (w.p - 1)), len), budget,
                 "xi_sum");
    std::vector<std::int64_t> inv = unit_inverses(hi, w.p, mod);
    std::int64_t acc = 0;
    auto rec = [&](auto&& self, int j, std::int64_t prev,
                   std::int64_t prod) -> void {
        if (j == len) {
            acc = (acc + prod) % mod;
            return;
        }
        // room for the len - 1 - j entries still to come
        for (std::int64_t u = prev + 1; u < hi - (len - 1 - j); ++u) {
            if (u % w.p == 0) continue;
            if (j > 0 && (u - prev) % w.p == 0) continue;
            self(self, j + 1, u, prod * inv[static_cast<std::size_t>(u)] % mod);
        }
    };
    rec(rec, 0, lo, 1);
    return Residue{acc, mod};
}

Residue pgap_sum(const WindowSpec& w, int g, int n, std::int64_t budget) {
    validate_window(w);
    if (n < 2) throw PreconditionViolated("pgap_sum needs n >= 2");
    if (g < 1 || g > std::min(w.kappa - 1, n - 2)) {
        throw InvalidGapCount("gap count " + std::to_string(g) +
                              " outside [1, min(kappa-1, n-2)]");
    }
    std::int64_t mod = w.p * w.p;
    std::int64_t lo = w.alpha * w.p, hi = (w.alpha + w.kappa) * w.p;
    int len = n - 1;
    int free_len = len - g;
    BigInt estimate = binomial(n - 2, g) *
                      boost::multiprecision::pow(BigInt(w.kappa),
                                                 static_cast<unsigned>(g)) *
                      binomial(static_cast<int>(w.kappa * w.p), free_len);
    check_budget(estimate, budget, "pgap_sum");
    std::vector<std::int64_t> inv = unit_inverses(hi, w.p, mod);
    std::int64_t acc = 0;
    std::vector<bool> marked(static_cast<std::size_t>(len + 1), false);
    // marked_after[j] = number of marked positions among j..len (1-indexed)
    std::vector<int> marked_after(static_cast<std::size_t>(len + 2), 0);
    auto rec = [&](auto&& self, int j, std::int64_t prev,
                   std::int64_t prod) -> void {
        if (j > len) {
            acc = (acc + prod) % mod;
            return;
        }
        int forced = marked_after[static_cast<std::size_t>(j + 1)];
        int free_rem = len - j - forced;
        std::int64_t cap = hi - 1 - free_rem - static_cast<std::int64_t>(forced) * w.p;
        if (marked[static_cast<std::size_t>(j)]) {
            for (std::int64_t u = prev + w.p; u <= cap; u += w.p) {
                self(self, j + 1, u, prod * inv[static_cast<std::size_t>(u)] % mod);
            }
        } else {
            for (std::int64_t u = prev + 1; u <= cap; ++u) {
                if (u % w.p == 0) continue;
                self(self, j + 1, u, prod * inv[static_cast<std::size_t>(u)] % mod);
            }
        }
    };
    for_each_combination(2, n, g, [&](const std::vector<int>& b) {
        std::fill(marked.begin(), marked.end(), false);
        for (int pos : b) marked[static_cast<std::size_t>(pos)] = true;
        for (int j = len; j >= 1; --j) {
            marked_after[static_cast<std::size_t>(j)] =
                marked_after[static_cast<std::size_t>(j + 1)] +
                (marked[static_cast<std::size_t>(j)] ? 1 : 0);
        }
        rec(rec, 1, lo, 1);
        return true;
    });
    return Residue{acc, mod};
}

Rational t_sum(int n, int ell, int m, std::int64_t p, std::int64_t budget) {
    if (!is_prime(p)) throw PreconditionViolated("t_sum needs a prime p");
    if (m < 1) throw PreconditionViolated("t_sum needs m >= 1");
    // ell-1 pins sit non-adjacently in positions 2..n-2, so ell can reach
    // ceil((n-1)/2) = floor(n/2); at even n that one extra value is needed
    // for the rebuild identity to be exact (witness: n=4, m=2).
    if (ell < 1 || 2 * ell > n) {
        throw PreconditionViolated("t_sum needs 1 <= ell <= n/2");
    }
    std::int64_t hi = static_cast<std::int64_t>(m) * p;
    int len = n - 1;
    BigInt estimate = binomial(n - 3, ell - 1) * binomial(m - 1, ell - 1) *
                      binomial(static_cast<int>(hi), len);
    check_budget(estimate, budget, "t_sum");
    std::vector<std::int64_t> pin(static_cast<std::size_t>(len + 1), 0);
    Rational acc(0);
    auto rec = [&](auto&& self, int j, std::int64_t prev,
                   const BigInt& prod) -> void {
        if (j > len) {
            acc += Rational(1, prod);
            return;
        }
        std::int64_t forced = pin[static_cast<std::size_t>(j)];
        if (forced != 0) {
            if (forced <= prev || forced >= hi) return;
            if ((forced - prev) % p == 0 && j > 1) return;
            self(self, j + 1, forced, prod * forced);
            return;
        }
        for (std::int64_t u = prev + 1; u < hi - (len - j); ++u) {
            if (u % p == 0) continue;
            if (j > 1 && (u - prev) % p == 0) continue;
            self(self, j + 1, u, prod * u);
        }
    };
    // choose pinned positions a (interior) and pinned levels k
    for_each_combination(2, n - 1, ell - 1, [&](const std::vector<int>& a) {
        for_each_combination(1, m, ell - 1, [&](const std::vector<int>& k) {
            std::fill(pin.begin(), pin.end(), 0);
            for (std::size_t i = 0; i < a.size(); ++i) {
                pin[static_cast<std::size_t>(a[i])] = static_cast<std::int64_t>(k[i]) * p;
            }
            rec(rec, 1, 0, BigInt(1));
            return true;
        });
        return true;
    });
    return acc;
}

namespace {

// Shared loop structure of v_sum / m_sum / e_sum / f_sum: labels a, repeated
// positions b, chains u of units below (kappa - a_g) p; the leaf callback
// receives the chain and the a/b choices and returns the summand factor to
// multiply into 1/(u_1...u_d).
template <typename Leaf>
Residue weighted_chain_sum(int kappa, int g, int n, std::int64_t p,
                           std::int64_t mod, std::int64_t budget,
                           const char* what, Leaf&& leaf) {
    if (!is_prime(p) || p < 5) throw PreconditionViolated("needs a prime p >= 5");
    if (g < 1 || g > std::min(kappa - 1, n - 2)) {
        throw InvalidGapCount("gap count " + std::to_string(g) +
                              " outside [1, min(kappa-1, n-2)]");
    }
    int d = n - g - 1;
    BigInt estimate = binomial(kappa - 1, g) * binomial(d + g - 1, g) *
                      binomial(static_cast<int>(kappa * p), d);
    check_budget(estimate, budget, what);
    std::vector<std::int64_t> inv = unit_inverses(static_cast<std::int64_t>(kappa) * p,
                                                  p, mod);
    std::int64_t acc = 0;
    std::vector<std::int64_t> chain(static_cast<std::size_t>(d) + 1, 0);
    for_each_combination(1, kappa, g, [&](const std::vector<int>& a) {
        std::int64_t hi = static_cast<std::int64_t>(kappa - a.back()) * p;
        for_each_multicombination(1, d + 1, g, [&](const std::vector<int>& b) {
            auto rec = [&](auto&& self, int j, std::int64_t prev,
                           std::int64_t prod) -> void {
                if (j > d) {
                    acc = (acc + prod * leaf(chain, a, b, inv) % mod) % mod;
                    return;
                }
                for (std::int64_t u = prev + 1; u < hi - (d - j); ++u) {
                    if (u % p == 0) continue;
                    chain[static_cast<std::size_t>(j)] = u;
                    self(self, j + 1, u,
                         prod * inv[static_cast<std::size_t>(u)] % mod);
                }
            };
            rec(rec, 1, 0, 1 % mod);
            return true;
        });
        return true;
    });
    return Residue{acc, mod};
}

} // namespace

Residue v_sum(int kappa, int g, int n, std::int64_t p, std::int64_t budget) {
    std::int64_t mod = p * p;
    return weighted_chain_sum(
        kappa, g, n, p, mod, budget, "v_sum",
        [mod](const std::vector<std::int64_t>& chain, const std::vector<int>&,
              const std::vector<int>& b, const std::vector<std::int64_t>& inv) {
            std::int64_t extra = 1;
            for (int pos : b) {
                extra = extra *
                        inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(pos)])] %
                        mod;
            }
            return extra;
        });
}

Residue m_sum(int kappa, int g, int n, std::int64_t p, std::int64_t budget) {
    std::int64_t mod = p;
    int d = n - g - 1;
    return weighted_chain_sum(
        kappa, g, n, p, mod, budget, "m_sum",
        [mod, d, g](const std::vector<std::int64_t>& chain,
                    const std::vector<int>& a, const std::vector<int>& b,
                    const std::vector<std::int64_t>& inv) {
            std::int64_t extra = 1;
            for (int pos : b) {
                extra = extra *
                        inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(pos)])] %
                        mod;
            }
            std::int64_t bracket = 0;
            for (int i = 0; i < g; ++i) {
                int end = (i + 1 < g) ? b[static_cast<std::size_t>(i + 1)] : d;
                for (int j = b[static_cast<std::size_t>(i)]; j <= end; ++j) {
                    bracket = (bracket +
                               static_cast<std::int64_t>(a[static_cast<std::size_t>(i)]) *
                                   inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(j)])]) %
                              mod;
                }
            }
            return extra * bracket % mod;
        });
}

Residue e_sum(int kappa, int g, int n, std::int64_t p, std::int64_t budget) {
    std::int64_t mod = p;
    int d = n - g - 1;
    return weighted_chain_sum(
        kappa, g, n, p, mod, budget, "e_sum",
        [mod, d](const std::vector<std::int64_t>& chain, const std::vector<int>&,
                 const std::vector<int>& b, const std::vector<std::int64_t>& inv) {
            std::int64_t extra = 1;
            for (int pos : b) {
                extra = extra *
                        inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(pos)])] %
                        mod;
            }
            std::int64_t bracket = 0;
            for (int j = 1; j <= d; ++j) {
                bracket = (bracket +
                           inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(j)])]) %
                          mod;
            }
            return extra * bracket % mod;
        });
}

Residue f_sum(int kappa, int g, int n, std::int64_t p, std::int64_t budget) {
    std::int64_t mod = p;
    return weighted_chain_sum(
        kappa, g, n, p, mod, budget, "f_sum",
        [mod](const std::vector<std::int64_t>& chain, const std::vector<int>&,
              const std::vector<int>& b, const std::vector<std::int64_t>& inv) {
            std::int64_t extra = 1;
            std::int64_t bracket = 0;
            for (int pos : b) {
                std::int64_t iv =
                    inv[static_cast<std::size_t>(chain[static_cast<std::size_t>(pos)])];
                extra = extra * iv % mod;
                bracket = (bracket + iv) % mod;
            }
            return extra * bracket % mod;
        });
}

std::pair<BigInt, BigInt> chain_sum_identity(int kappa, int g, int i) {
    if (kappa < 2 || g < 1 || g >= kappa || i < 1 || i > g) {
        throw PreconditionViolated("chain_sum_identity needs 1 <= i <= g < kappa");
    }
    BigInt lhs = 0;
    for_each_combination(1, kappa, g, [&](const std::vector<int>& c) {
        lhs += c[static_cast<std::size_t>(g - i)]; // i-th largest of the chain
        return true;
    });
    BigInt rhs = 0;
    for (int a = 1; a < kappa; ++a) rhs += binomial(a, g);
    rhs *= (g + 1 - i);
    return {lhs, rhs};
}

namespace detail {

std::vector<std::vector<int>> dw_compositions(int d, int w) {
    std::vector<std::vector<int>> out;
    for_each_composition(w, d, [&](const std::vector<int>& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

std::vector<int> rho(const std::vector<int>& b, int d) {
    if (d < 1) throw PreconditionViolated("rho needs d >= 1");
    std::vector<int> s(static_cast<std::size_t>(d), 1);
    for (int label : b) {
        if (label < 1 || label > d) {
            throw PreconditionViolated("rho labels must lie in [1, d]");
        }
        ++s[static_cast<std::size_t>(label - 1)];
    }
    return s;
}

} // namespace detail

} // namespace supercong
