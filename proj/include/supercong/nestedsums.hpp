#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "supercong/modarith.hpp"

namespace supercong {

// Index window (alpha*p, (alpha+kappa)*p), endpoints excluded.
struct WindowSpec {
    int alpha = 0;
    int kappa = 1;
    std::int64_t p = 0;
};

inline constexpr std::int64_t kDefaultNestedBudget = 100'000'000;

// Multiple harmonic sum over strict chains 0 < k_1 < ... < k_d < n of
// prod k_i^{-s_i}, exact rational value. Empty exponent vector gives 1.
Rational mhs(std::int64_t n, const std::vector<int>& s);

// The same sum reduced mod M.modulus. Plain mode requires every index in
// (0, n) to be a unit and throws NotAUnit otherwise; with p_restricted the
// indices divisible by p are skipped instead.
Residue mhs_mod(std::int64_t n, const std::vector<int>& s,
                const PrimePowerModulus& M, bool p_restricted = false);

// Sum over ordered pairwise-distinct tuples (l_1, ..., l_d) in the window,
// every entry prime to p, of prod l_i^{-s_i}; value mod p^2.
Residue u_sum(const WindowSpec& w, const std::vector<int>& s,
              std::int64_t budget = kDefaultNestedBudget);

// Chains u_1 < ... < u_{n-1} in the window with every entry and every
// consecutive difference prime to p; sum of 1/(u_1...u_{n-1}) mod p^2.
Residue xi_sum(const WindowSpec& w, int n,
               std::int64_t budget = kDefaultNestedBudget);

// Sum over choices of g marked positions 1 < b_1 < ... < b_g < n and chains
// u_1 < ... < u_{n-1} in the window (entries prime to p) whose marked
// differences u_{b_j} - u_{b_j - 1} are divisible by p; the remaining
// differences are unconstrained. Value mod p^2; requires
// 1 <= g <= min(kappa - 1, n - 2), otherwise InvalidGapCount.
Residue pgap_sum(const WindowSpec& w, int g, int n,
                 std::int64_t budget = kDefaultNestedBudget);

// Pinned-chain sum: ell - 1 interior positions 2 <= a_1 < ... < a_{ell-1}
// <= n-2 pinned to u_{a_i} = k_i * p with 1 <= k_1 < ... < k_{ell-1} < m,
// summed over chains 0 < u_1 < ... < u_{n-1} < m*p whose unpinned entries
// and all consecutive differences are prime to p. Exact rational value.
// Requires 1 <= ell <= n/2 (pins are non-adjacent inside 2..n-2, so ell
// tops out at ceil((n-1)/2); even n needs the boundary value).
Rational t_sum(int n, int ell, int m, std::int64_t p,
               std::int64_t budget = kDefaultNestedBudget);

// Weighted chain sum mod p^2: labels 0 < a_1 < ... < a_g < kappa, repeated
// positions 0 < b_1 <= ... <= b_g <= d with d = n - g - 1, chains
// 0 < u_1 < ... < u_d < (kappa - a_g) p of units, summand
// 1/(u_1...u_d * u_{b_1}...u_{b_g}). Requires 1 <= g <= min(kappa-1, n-2).
Residue v_sum(int kappa, int g, int n, std::int64_t p,
              std::int64_t budget = kDefaultNestedBudget);

// Same loops as v_sum with the summand multiplied by the segment bracket
// a_1/u_{b_1} + ... + a_1/u_{b_2} + a_2/u_{b_2} + ... + a_g/u_d (label a_i
// covers positions b_i..b_{i+1}, the last label runs to d); value mod p.
Residue m_sum(int kappa, int g, int n, std::int64_t p,
              std::int64_t budget = kDefaultNestedBudget);

// v_sum summand multiplied by 1/u_1 + ... + 1/u_d; value mod p.
Residue e_sum(int kappa, int g, int n, std::int64_t p,
              std::int64_t budget = kDefaultNestedBudget);

// v_sum summand multiplied by 1/u_{b_1} + ... + 1/u_{b_g}; value mod p.
Residue f_sum(int kappa, int g, int n, std::int64_t p,
              std::int64_t budget = kDefaultNestedBudget);

// Label-sum identity over chains kappa > a_1 > ... > a_g > 0 (a_i is the
// i-th largest label): returns the sum of a_i over all chains and the
// closed form (g + 1 - i) * sum_{a=1}^{kappa-1} C(a, g).
std::pair<BigInt, BigInt> chain_sum_identity(int kappa, int g, int i);

namespace detail {

// Compositions of w into exactly d positive parts, lexicographic order.
std::vector<std::vector<int>> dw_compositions(int d, int w);

// Weakly increasing label vector b in [1,d]^g -> exponent vector s with
// s_j = 1 + #{i : b_i = j}; the image has weight d + g.
std::vector<int> rho(const std::vector<int>& b, int d);

} // namespace detail

} // namespace supercong
