#pragma once

#include <cstdint>
#include <vector>

#include "supercong/modarith.hpp"

namespace supercong {

// R: compositions of m*p^r into n parts, every part prime to p.
// S: same, with every part additionally below p^r.
enum class Variant { R, S };

struct SumSpec {
    Variant variant;
    int n = 0;
    int m = 0;
    PrimePowerModulus pp;
    std::int64_t target = 0; // m * p^r

    SumSpec(Variant v, int n_, int m_, PrimePowerModulus pp_);
};

// Default work budgets. Both are plain parameters on the evaluators so a
// caller who has measured their box can raise them.
inline constexpr std::int64_t kDefaultConvWorkBudget = 200'000'000'000; // n*target^2
inline constexpr std::int64_t kDefaultBruteBudget = 10'000'000; // compositions

// Coefficients of the generating kernel sum_l x^l / l mod p^r, truncated at
// the largest part a composition can use: index l holds 1/l mod p^r when
// p does not divide l, else 0. Length m*p^r for R and p^r for S.
std::vector<std::int64_t> series_kernel(const SumSpec& spec);

// Coefficient of x^target in kernel^n, i.e. the full sum reduced mod p^r,
// computed with n-1 truncated polynomial multiplications.
Residue eval_conv(const SumSpec& spec,
                  std::int64_t work_budget = kDefaultConvWorkBudget);

// Same value by direct enumeration of the compositions. Exponential; only
// for oracle duty on small inputs.
Residue eval_brute(const SumSpec& spec,
                   std::int64_t budget = kDefaultBruteBudget);

// Exact rational value of the sum (no reduction); the cross-check target
// for identities that hold over Q, not merely mod p^r.
Rational eval_brute_rational(const SumSpec& spec,
                             std::int64_t budget = kDefaultBruteBudget);

} // namespace supercong
