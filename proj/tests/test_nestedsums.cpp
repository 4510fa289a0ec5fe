#include <doctest.h>

#include <algorithm>

#include "supercong/directsums.hpp"
#include "supercong/nestedsums.hpp"

using namespace supercong;

namespace {

Residue inverse_of(std::int64_t v, std::int64_t mod) {
    return mod_inverse(Residue{v % mod, mod});
}

} // namespace

TEST_SUITE("nestedsums") {

TEST_CASE("mhs basics") {
    CHECK(mhs(3, {1}) == Rational(3, 2));
    CHECK(mhs(4, {1, 1}) == Rational(1));
    CHECK(mhs(5, {}) == Rational(1));
    CHECK(mhs(3, {1, 1, 1}) == Rational(0)); // depth beyond n-1
    CHECK(mhs(1, {1}) == Rational(0));
    CHECK_THROWS_AS(mhs(0, {1}), PreconditionViolated);
    CHECK_THROWS_AS(mhs(3, {0}), PreconditionViolated);
}

TEST_CASE("mhs_mod matches the exact value on clean ranges") {
    const PrimePowerModulus M(7, 2);
    for (const auto& s : std::vector<std::vector<int>>{
             {1}, {2}, {1, 1}, {1, 2}, {2, 1}, {1, 1, 1}}) {
        CHECK(mhs_mod(7, s, M) == reduce_rational(mhs(7, s), 49));
    }
    CHECK(mhs_mod(7, {1, 1}, M).value == 42);
}

TEST_CASE("mhs_mod unit handling") {
    const PrimePowerModulus M(7, 1);
    CHECK_THROWS_AS(mhs_mod(8, {1}, M), NotAUnit);
    CHECK(mhs_mod(8, {}, M).value == 1); // depth 0 never touches an index
    // d > n-1 short-circuits to 0 before any index is inspected.
    CHECK(mhs_mod(8, {1, 1, 1, 1, 1, 1, 1, 1}, M).value == 0);

    // The restricted variant skips multiples of p instead.
    const Residue restricted = mhs_mod(8, {1}, M, true);
    Rational direct(0);
    for (int k = 1; k < 8; ++k) {
        if (k % 7 != 0) direct += Rational(1, k);
    }
    CHECK(restricted == reduce_rational(direct, 7));
}

TEST_CASE("u_sum frozen values") {
    CHECK(u_sum(WindowSpec{0, 1, 7}, {2}).value == 14);
    CHECK(u_sum(WindowSpec{1, 1, 7}, {2}).value == 14);
    for (std::int64_t p : {5, 7, 11}) {
        CHECK(u_sum(WindowSpec{0, 1, p}, {1}).value == 0);
    }
    CHECK_THROWS_AS(u_sum(WindowSpec{0, 1, 7}, {}), PreconditionViolated);
    CHECK_THROWS_AS(u_sum(WindowSpec{-1, 1, 7}, {2}), PreconditionViolated);
    CHECK_THROWS_AS(u_sum(WindowSpec{0, 2, 13}, {1, 1, 1}, 10),
                    WorkBudgetExceeded);
}

TEST_CASE("u_sum is symmetric in the exponents") {
    const WindowSpec w{0, 2, 11};
    CHECK(u_sum(w, {1, 2}) == u_sum(w, {2, 1}));
    CHECK(u_sum(w, {1, 1, 2}) == u_sum(w, {2, 1, 1}));
    CHECK(u_sum(w, {1, 1, 2}) == u_sum(w, {1, 2, 1}));
}

TEST_CASE("xi_sum frozen values and alpha independence") {
    CHECK(xi_sum(WindowSpec{0, 1, 7}, 3).value == 42);
    for (std::int64_t p : {7, 11, 13}) {
        CHECK(xi_sum(WindowSpec{0, 1, p}, 4).value == 0);
    }
    CHECK(xi_sum(WindowSpec{2, 2, 11}, 3) == xi_sum(WindowSpec{0, 2, 11}, 3));
}

TEST_CASE("pgap_sum frozen values and gap validation") {
    CHECK(pgap_sum(WindowSpec{0, 2, 7}, 1, 3).value == 14);
    for (std::int64_t p : {11, 13}) {
        CHECK(pgap_sum(WindowSpec{0, 2, p}, 1, 4).value == 0);
    }
    CHECK(pgap_sum(WindowSpec{1, 3, 11}, 2, 4) ==
          pgap_sum(WindowSpec{0, 3, 11}, 2, 4));
    CHECK_THROWS_AS(pgap_sum(WindowSpec{0, 2, 7}, 0, 3), InvalidGapCount);
    CHECK_THROWS_AS(pgap_sum(WindowSpec{0, 2, 7}, 2, 3), InvalidGapCount);
    CHECK_THROWS_AS(pgap_sum(WindowSpec{0, 4, 7}, 3, 4), InvalidGapCount);
}

TEST_CASE("alpha shift invariance") {
    for (std::int64_t p : {7, 11}) {
        for (int kappa = 1; kappa <= 2; ++kappa) {
            for (const auto& s : std::vector<std::vector<int>>{
                     {2}, {1, 1}, {1, 2}}) {
                const Residue base = u_sum(WindowSpec{0, kappa, p}, s);
                CHECK(u_sum(WindowSpec{1, kappa, p}, s) == base);
                CHECK(u_sum(WindowSpec{2, kappa, p}, s) == base);
            }
            for (int n = 2; n <= 4; ++n) {
                const Residue base = xi_sum(WindowSpec{0, kappa, p}, n);
                CHECK(xi_sum(WindowSpec{1, kappa, p}, n) == base);
                CHECK(xi_sum(WindowSpec{2, kappa, p}, n) == base);
            }
        }
        const Residue base = pgap_sum(WindowSpec{0, 2, p}, 1, 3);
        CHECK(pgap_sum(WindowSpec{1, 2, p}, 1, 3) == base);
        CHECK(pgap_sum(WindowSpec{2, 2, p}, 1, 3) == base);
    }
}

TEST_CASE("xi decomposes into the unordered sum minus gap corrections") {
    for (std::int64_t p : {7, 11, 13}) {
        for (int kappa = 1; kappa <= 3; ++kappa) {
            for (int n = 2; n <= 5; ++n) {
                const WindowSpec w{0, kappa, p};
                const std::int64_t mod = p * p;
                const std::vector<int> ones(static_cast<std::size_t>(n - 1),
                                            1);
                Residue rhs = u_sum(w, ones) *
                              inverse_of(factorial(n - 1)
                                             .convert_to<std::int64_t>(),
                                         mod);
                const int g_max = std::min(kappa - 1, n - 2);
                for (int g = 1; g <= g_max; ++g) {
                    const Residue part = pgap_sum(w, g, n);
                    rhs = g % 2 == 1 ? rhs - part : rhs + part;
                }
                CHECK(xi_sum(w, n) == rhs);
            }
        }
    }
}

TEST_CASE("composition enumerator and the exponent map") {
    CHECK(detail::dw_compositions(2, 4) ==
          std::vector<std::vector<int>>{{1, 3}, {2, 2}, {3, 1}});
    CHECK(detail::dw_compositions(1, 3) ==
          std::vector<std::vector<int>>{{3}});
    CHECK(detail::dw_compositions(3, 2).empty());
    CHECK(detail::rho({1, 1, 2}, 3) == std::vector<int>{3, 2, 1});
    CHECK(detail::rho({}, 2) == std::vector<int>{1, 1});
    // Every rho image is a composition of d + g into d parts.
    for (const auto& b : std::vector<std::vector<int>>{
             {1}, {2}, {1, 2}, {2, 2}, {1, 1, 3}}) {
        const int d = 3;
        const auto s = detail::rho(b, d);
        const auto all = detail::dw_compositions(
            d, d + static_cast<int>(b.size()));
        CHECK(std::find(all.begin(), all.end(), s) != all.end());
    }
}

TEST_CASE("orbit-stabilizer collapse of chain sums onto u_sum") {
    for (std::int64_t p : {7, 11, 13}) {
        for (int a = 1; a <= 2; ++a) {
            for (int d = 1; d <= 3; ++d) {
                for (int w = d; w <= 5; ++w) {
                    const PrimePowerModulus M(p, 2);
                    Residue lhs{0, M.modulus};
                    Residue rhs{0, M.modulus};
                    for (const auto& s : detail::dw_compositions(d, w)) {
                        lhs = lhs + mhs_mod(a * p, s, M, true);
                        rhs = rhs + u_sum(WindowSpec{0, a, p}, s);
                    }
                    rhs = rhs * inverse_of(factorial(d)
                                               .convert_to<std::int64_t>(),
                                           M.modulus);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("t_sum pins interior positions to p-multiples") {
    CHECK(t_sum(3, 1, 1, 5) == Rational(35, 24));
    CHECK_THROWS_AS(t_sum(3, 2, 1, 5), PreconditionViolated);
    CHECK_THROWS_AS(t_sum(4, 0, 1, 5), PreconditionViolated);
}

TEST_CASE("pinned chains rebuild the full sum") {
    for (std::int64_t p : {5, 7}) {
        for (int n = 3; n <= 5; ++n) {
            for (int m = 1; m <= 2; ++m) {
                Rational total(0);
                for (int ell = 1; 2 * ell <= n; ++ell) {
                    total += t_sum(n, ell, m, p);
                }
                total *= Rational(factorial(n), BigInt(m) * p);
                const SumSpec spec(Variant::R, n, m, PrimePowerModulus(p, 1));
                CHECK(total == eval_brute_rational(spec));
            }
        }
    }
}

TEST_CASE("section 5 sums against their closed forms") {
    CHECK(v_sum(2, 1, 3, 7).value == 14);
    CHECK(m_sum(2, 1, 3, 11).value == 0);
    CHECK(e_sum(2, 1, 4, 11).value == 0);
    CHECK(f_sum(2, 1, 4, 11).value == 0);
    CHECK(m_sum(3, 2, 4, 11).value == 0);
    CHECK_THROWS_AS(v_sum(2, 2, 3, 7), InvalidGapCount);
    CHECK_THROWS_AS(v_sum(3, 2, 3, 7), InvalidGapCount);
}

TEST_CASE("label chain sums") {
    const auto [l1, r1] = chain_sum_identity(4, 2, 2);
    CHECK(l1 == 4);
    CHECK(r1 == 4);
    const auto [l2, r2] = chain_sum_identity(5, 1, 1);
    CHECK(l2 == 10);
    CHECK(r2 == 10);
    const auto [l3, r3] = chain_sum_identity(6, 3, 2);
    CHECK(l3 == 30);
    CHECK(r3 == 30);
    for (int kappa = 2; kappa <= 8; ++kappa) {
        for (int g = 1; g < kappa; ++g) {
            for (int i = 1; i <= g; ++i) {
                const auto [lhs, rhs] = chain_sum_identity(kappa, g, i);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("reruns are bit-identical") {
    const WindowSpec w{0, 2, 11};
    CHECK(u_sum(w, {1, 2}) == u_sum(w, {1, 2}));
    CHECK(xi_sum(w, 4) == xi_sum(w, 4));
}

} // TEST_SUITE
