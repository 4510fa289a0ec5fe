#include "supercong/directsums.hpp"

#include <algorithm>
#include <string>

namespace supercong {

SumSpec::SumSpec(Variant v, int n_, int m_, PrimePowerModulus pp_)
    : variant(v), n(n_), m(m_), pp(pp_) {
    if (n < 1) throw PreconditionViolated("sum needs n >= 1");
    if (m < 1) throw PreconditionViolated("sum needs m >= 1");
    if (m % pp.p == 0) {
        throw PreconditionViolated("order m must be prime to p");
    }
    constexpr std::int64_t kLimit = std::int64_t{1} << 31;
    if (pp.modulus > kLimit / m) {
        throw PreconditionViolated("m * p^r exceeds the 2^31 target limit");
    }
    target = m * pp.modulus;
}

std::vector<std::int64_t> series_kernel(const SumSpec& spec) {
    std::int64_t len =
        spec.variant == Variant::R ? spec.target : spec.pp.modulus;
    std::vector<std::int64_t> kernel(static_cast<std::size_t>(len), 0);
    for (std::int64_t l = 1; l < len; ++l) {
        if (l % spec.pp.p != 0) {
            kernel[static_cast<std::size_t>(l)] =
                mod_inverse_raw(l, spec.pp.modulus);
        }
    }
    return kernel;
}

Residue eval_conv(const SumSpec& spec, std::int64_t work_budget) {
    const std::int64_t T = spec.target;
    const std::int64_t M = spec.pp.modulus;
    // Documented cost model: n * target^2 multiply-adds. The truncated
    // kernel makes the real cost lower (much lower for S), but the model is
    // what callers size their budgets against.
    if (static_cast<double>(spec.n) * static_cast<double>(T) *
            static_cast<double>(T) >
        static_cast<double>(work_budget)) {
        throw WorkBudgetExceeded("convolution estimate n*target^2 = " +
                                 std::to_string(spec.n) + "*" +
                                 std::to_string(T) + "^2 exceeds budget " +
                                 std::to_string(work_budget));
    }
    std::vector<std::int64_t> kernel = series_kernel(spec);
    const std::int64_t cap = static_cast<std::int64_t>(kernel.size()) - 1;
    if (spec.n == 1) {
        std::int64_t v =
            T <= cap ? kernel[static_cast<std::size_t>(T)] : 0;
        return Residue{v, M};
    }
    std::vector<std::int64_t> cur(static_cast<std::size_t>(T) + 1, 0);
    for (std::int64_t l = 0; l <= std::min(cap, T); ++l) {
        cur[static_cast<std::size_t>(l)] = kernel[static_cast<std::size_t>(l)];
    }
    const auto mod128 = static_cast<unsigned __int128>(M);
    for (int step = 2; step <= spec.n; ++step) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(T) + 1, 0);
        // Factors used so far have min degree step-1, the ones still to come
        // contribute at least n-step, so only degrees [step, T-(n-step)]
        // matter.
        const std::int64_t jmax = T - (spec.n - step);
        for (std::int64_t j = step; j <= jmax; ++j) {
            unsigned __int128 acc = 0;
            const std::int64_t lmax = std::min(cap, j - (step - 1));
            for (std::int64_t l = 1; l <= lmax; ++l) {
                const std::int64_t kv = kernel[static_cast<std::size_t>(l)];
                if (kv == 0) continue;
                acc += static_cast<std::uint64_t>(kv) *
                       static_cast<std::uint64_t>(
                           cur[static_cast<std::size_t>(j - l)]);
            }
            next[static_cast<std::size_t>(j)] =
                static_cast<std::int64_t>(acc % mod128);
        }
        cur = std::move(next);
    }
    return Residue{cur[static_cast<std::size_t>(T)], M};
}

namespace {

void check_brute_budget(const SumSpec& spec, std::int64_t budget) {
    // Compositions of target into n positive parts bound the work from
    // above, before the divisibility filters cut it down.
    BigInt estimate = binomial(static_cast<int>(spec.target) - 1, spec.n - 1);
    if (estimate > budget) {
        throw WorkBudgetExceeded(
            "brute-force enumeration of about " +
            estimate.convert_to<std::string>() +
            " compositions exceeds budget " + std::to_string(budget));
    }
}

} // namespace

Residue eval_brute(const SumSpec& spec, std::int64_t budget) {
    check_brute_budget(spec, budget);
    const std::int64_t T = spec.target;
    const std::int64_t M = spec.pp.modulus;
    const int n = spec.n;
    const std::vector<std::int64_t> inv = series_kernel(spec);
    const std::int64_t cap = static_cast<std::int64_t>(inv.size()) - 1;
    std::int64_t acc = 0;
    auto rec = [&](auto&& self, int idx, std::int64_t remaining,
                   std::int64_t prod) -> void {
        if (idx == n - 1) {
            if (remaining >= 1 && remaining <= cap &&
                inv[static_cast<std::size_t>(remaining)] != 0) {
                acc = (acc +
                       prod * inv[static_cast<std::size_t>(remaining)]) %
                      M;
            }
            return;
        }
        const std::int64_t hi = std::min(cap, remaining - (n - 1 - idx));
        for (std::int64_t l = 1; l <= hi; ++l) {
            const std::int64_t iv = inv[static_cast<std::size_t>(l)];
            if (iv == 0) continue;
            self(self, idx + 1, remaining - l, prod * iv % M);
        }
    };
    rec(rec, 0, T, 1);
    return Residue{acc, M};
}

Rational eval_brute_rational(const SumSpec& spec, std::int64_t budget) {
    check_brute_budget(spec, budget);
    const std::int64_t T = spec.target;
    const std::int64_t p = spec.pp.p;
    const int n = spec.n;
    const std::int64_t cap =
        (spec.variant == Variant::R ? T : spec.pp.modulus) - 1;
    Rational acc = 0;
    auto rec = [&](auto&& self, int idx, std::int64_t remaining,
                   const BigInt& prod) -> void {
        if (idx == n - 1) {
            if (remaining >= 1 && remaining <= cap && remaining % p != 0) {
                acc += Rational(BigInt(1), prod * remaining);
            }
            return;
        }
        const std::int64_t hi = std::min(cap, remaining - (n - 1 - idx));
        for (std::int64_t l = 1; l <= hi; ++l) {
            if (l % p == 0) continue;
            self(self, idx + 1, remaining - l, BigInt(prod * l));
        }
    };
    rec(rec, 0, T, BigInt(1));
    return acc;
}

} // namespace supercong
