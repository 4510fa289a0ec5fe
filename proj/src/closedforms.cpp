#include "supercong/closedforms.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <utility>

#include <json.hpp>

#include "supercong/enumerate.hpp"

namespace supercong {

namespace {

std::string monomial_label(const BetaMonomial& mono) {
    std::string out = "{";
    const auto& ix = mono.indices();
    for (std::size_t i = 0; i < ix.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(ix[i]);
    }
    return out + "}";
}

// Number of ordered tuples folding to the multiset, depth! / prod(mult!).
BigInt ordered_tuple_count(const BetaMonomial& mono) {
    BigInt count = factorial(mono.depth());
    const auto& ix = mono.indices();
    std::size_t i = 0;
    while (i < ix.size()) {
        std::size_t j = i;
        while (j < ix.size() && ix[j] == ix[i]) ++j;
        count /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return count;
}

} // namespace

void RationalCombo::add(const BetaMonomial& mono, const Rational& c) {
    if (mono.weight() != weight_) {
        throw PreconditionViolated("monomial weight " +
                                   std::to_string(mono.weight()) +
                                   " added to combo of weight " +
                                   std::to_string(weight_));
    }
    if (c == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rational RationalCombo::coefficient(const BetaMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

RationalCombo& RationalCombo::operator+=(const RationalCombo& other) {
    if (other.weight_ != weight_) {
        throw PreconditionViolated("cannot add combos of different weight");
    }
    for (const auto& [mono, c] : other.terms_) add(mono, c);
    return *this;
}

RationalCombo& RationalCombo::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= scalar;
    return *this;
}

namespace {

void odd_comp_rec(int rem, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (rem == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    for (int a = 3; a <= rem; a += 2) {
        cur.push_back(a);
        odd_comp_rec(rem - a, cur, out);
        cur.pop_back();
    }
}

void odd_comp_fixed_rec(int rem, int parts, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (rem == 0) out.push_back(cur);
        return;
    }
    for (int a = 3; a <= rem - 3 * (parts - 1); a += 2) {
        cur.push_back(a);
        odd_comp_fixed_rec(rem - a, parts - 1, cur, out);
        cur.pop_back();
    }
}

void odd_part_rec(int rem, int min_part, std::vector<int>& cur,
                  std::vector<BetaMonomial>& out) {
    if (rem == 0) {
        if (!cur.empty()) out.emplace_back(cur);
        return;
    }
    for (int a = min_part; a <= rem; a += 2) {
        cur.push_back(a);
        odd_part_rec(rem - a, a, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> odd_compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (n >= 3) odd_comp_rec(n, cur, out);
    return out;
}

std::vector<std::vector<int>> odd_compositions(int n, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (parts >= 1 && n >= 3 * parts) odd_comp_fixed_rec(n, parts, cur, out);
    return out;
}

std::vector<BetaMonomial> odd_partitions(int n) {
    std::vector<BetaMonomial> out;
    std::vector<int> cur;
    if (n >= 3) odd_part_rec(n, 3, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

RationalCombo r_closed_form(int n, int m) {
    if (n < 2 || m < 1) {
        throw PreconditionViolated("r_closed_form needs n >= 2 and m >= 1");
    }
    RationalCombo out(n);
    for (int ell = 1; 3 * ell <= n; ++ell) {
        auto tuples = odd_compositions(n, ell);
        if (tuples.empty()) continue;
        for_each_composition(m, ell, [&](const std::vector<int>& k) {
            // 1 / prod of proper prefix sums of k; empty product for ell = 1.
            Rational prefix(1);
            std::int64_t acc = 0;
            for (int j = 0; j + 1 < ell; ++j) {
                acc += k[static_cast<std::size_t>(j)];
                prefix /= acc;
            }
            for (const auto& a : tuples) {
                Rational term = prefix;
                for (int j = 0; j < ell; ++j) {
                    const int kj = k[static_cast<std::size_t>(j)];
                    const int aj = a[static_cast<std::size_t>(j)];
                    term *= Rational(binomial(kj + aj - 1, aj) -
                                     binomial(kj, aj));
                }
                out.add(BetaMonomial(a), term);
            }
            return true;
        });
    }
    out *= Rational(factorial(n), BigInt(m));
    return out;
}

RationalCombo s_closed_form(int n, int m) {
    if (n < 2 || m < 1) {
        throw PreconditionViolated("s_closed_form needs n >= 2 and m >= 1");
    }
    RationalCombo out(n);
    for (int k = 0; k < m; ++k) {
        RationalCombo t = r_closed_form(n, m - k);
        Rational c{binomial(n, k)};
        if (k % 2 == 1) c = -c;
        t *= c;
        out += t;
    }
    return out;
}

namespace {

// C(3, a) for a part value a: 1 at a = 3, 0 for every larger odd a. Shows
// up in several brackets as an indicator of the smallest part value.
Rational c3(int a) { return Rational(binomial(3, a)); }

void add_beta_n(RationalCombo& out, int n, const Rational& c) {
    out.add(BetaMonomial({n}), c);
}

// Add coeff(tuple) on every ordered odd tuple of the given depth.
template <typename Coeff>
void add_depth(RationalCombo& out, int n, int depth, Coeff&& coeff) {
    for (const auto& a : odd_compositions(n, depth)) {
        out.add(BetaMonomial(a), coeff(a));
    }
}

RationalCombo known_r(int n, int m) {
    RationalCombo out(n);
    const bool odd = (n % 2 != 0);
    const Rational nf{factorial(n)};
    if (odd && n <= 7) {
        // Fixed-n forms, valid for every m. The m-indexed branches below
        // assume n > m (their depth-1 coefficient drops a C(m, n) term that
        // only vanishes then), so small odd n must not reach them.
        const BigInt mm = m;
        BigInt c;
        if (n == 3) {
            c = 6 * mm;
        } else if (n == 5) {
            c = 20 * mm * (mm * mm + 5);
        } else {
            c = 42 * mm * (mm * mm * mm * mm + 35 * mm * mm + 84);
        }
        add_beta_n(out, n, Rational(c));
        return out;
    }
    switch (m) {
    case 1:
        if (odd) add_beta_n(out, n, nf);
        break;
    case 2:
        if (odd) {
            add_beta_n(out, n, Rational(factorial(n + 1), BigInt(2)));
        } else {
            add_depth(out, n, 2, [&](const auto&) { return nf / 2; });
        }
        break;
    case 3:
        if (odd) {
            add_beta_n(out, n,
                       Rational(binomial(n + 2, 3) * factorial(n - 1)));
            add_depth(out, n, 3, [&](const auto&) { return nf / 6; });
        } else {
            add_depth(out, n, 2,
                      [&](const auto&) { return nf * (n + 2) / 4; });
        }
        break;
    case 4:
        if (odd) {
            add_beta_n(out, n,
                       Rational(factorial(n - 1) * binomial(n + 3, 4)));
            add_depth(out, n, 3,
                      [&](const auto&) { return nf * (n + 3) / 12; });
        } else {
            add_depth(out, n, 2, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = Rational(3 * n * n, 2) + 9 * n + 11 + a * a -
                             8 * c3(a);
                return nf * b / 24;
            });
            add_depth(out, n, 4, [&](const auto&) { return nf / 24; });
        }
        break;
    case 5:
        if (odd) {
            add_beta_n(out, n,
                       Rational(factorial(n - 1) * binomial(n + 4, 5)));
            add_depth(out, n, 5, [&](const auto&) { return nf / 120; });
            add_depth(out, n, 3, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = Rational(n * n, 2) + 4 * n + 7 +
                             Rational(a * a, 2) - 4 * c3(a);
                return nf * b / 24;
            });
        } else {
            add_depth(out, n, 2, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = Rational(BigInt(n) * n * n) + 9 * n * n +
                             Rational(63 * n, 2) + 30 +
                             Rational(BigInt(a) * a * a) + 6 * a * a -
                             12 * (n + 4) * c3(a);
                return nf * b / 72;
            });
            add_depth(out, n, 4,
                      [&](const auto&) { return nf * (n + 4) / 48; });
        }
        break;
    case 6:
        if (odd) {
            add_beta_n(out, n,
                       Rational(factorial(n - 1) * binomial(n + 5, 6)));
            add_depth(out, n, 5,
                      [&](const auto&) { return nf * (n + 5) / 240; });
            add_depth(out, n, 3, [&](const std::vector<int>& t) {
                const int a = t[0];
                const int b2 = t[1];
                Rational b = Rational(BigInt(n) * n * n, BigInt(3)) +
                             Rational(BigInt(a) * a * a) +
                             2 * Rational(BigInt(a) * a * b2) + 5 * n * n +
                             5 * a * a + Rational(68 * n, 3) + 30 -
                             8 * c3(a) * (n + 5);
                return nf * b / 96;
            });
        } else {
            // The direct expression for this cell does not survive
            // cross-checking against the defining sums; use the pipeline.
            return r_closed_form(n, 6);
        }
        break;
    default:
        throw UnsupportedM("no direct closed form for m = " +
                           std::to_string(m));
    }
    return out;
}

RationalCombo known_s(int n, int m) {
    RationalCombo out(n);
    if (m >= n) {
        // Each of the m blocks of the capped sum needs at least one of the
        // n parts, which is impossible; the sum is empty.
        return out;
    }
    const bool odd = (n % 2 != 0);
    const Rational nf{factorial(n)};
    switch (m) {
    case 1:
        if (odd) add_beta_n(out, n, nf);
        break;
    case 2:
        if (odd) {
            add_beta_n(out, n, -nf * (n - 1) / 2);
        } else {
            add_depth(out, n, 2, [&](const auto&) { return nf / 2; });
        }
        break;
    case 3:
        if (odd) {
            add_beta_n(out, n, Rational(binomial(n, 3) * factorial(n - 1)));
            add_depth(out, n, 3, [&](const auto&) { return nf / 6; });
        } else {
            add_depth(out, n, 2,
                      [&](const auto&) { return -nf * (n - 2) / 4; });
        }
        break;
    case 4:
        if (odd) {
            add_beta_n(out, n,
                       -Rational(factorial(n - 1) * binomial(n, 4)));
            add_depth(out, n, 3,
                      [&](const auto&) { return -nf * (n - 3) / 12; });
        } else {
            add_depth(out, n, 2, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = Rational(3 * n * n, 2) - 9 * n + 11 + a * a -
                             8 * c3(a);
                return nf * b / 24;
            });
            add_depth(out, n, 4, [&](const auto&) { return nf / 24; });
        }
        break;
    case 5:
        if (odd) {
            add_beta_n(out, n,
                       Rational(factorial(n - 1) * binomial(n, 5)));
            add_depth(out, n, 5, [&](const auto&) { return nf / 120; });
            add_depth(out, n, 3, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = Rational(n * n, 2) - 4 * n + 7 +
                             Rational(a * a, 2) - 4 * c3(a);
                return nf * b / 24;
            });
        } else {
            add_depth(out, n, 2, [&](const std::vector<int>& t) {
                const int a = t[0];
                Rational b = -2 * Rational(BigInt(n) * n * n) + 18 * n * n -
                             63 * n + 60 - 2 * Rational(BigInt(a) * a * a) +
                             12 * a * a + 24 * (n - 4) * c3(a);
                return nf * b / 144;
            });
            add_depth(out, n, 4,
                      [&](const auto&) { return -nf * (n - 4) / 48; });
        }
        break;
    case 6:
        // Inclusion-exclusion over how many parts reach the cap, applied
        // to the uncapped forms; mirrors the pipeline identity.
        for (int k = 0; k <= 5; ++k) {
            RationalCombo t = known_r(n, 6 - k);
            Rational c{binomial(n, k)};
            if (k % 2 == 1) c = -c;
            t *= c;
            out += t;
        }
        break;
    default:
        throw UnsupportedM("no direct closed form for m = " +
                           std::to_string(m));
    }
    return out;
}

} // namespace

RationalCombo known_closed_form(Variant v, int n, int m) {
    if (n < 2) throw PreconditionViolated("known_closed_form needs n >= 2");
    if (m < 1 || m > 6) {
        throw UnsupportedM("no direct closed form for m = " +
                           std::to_string(m));
    }
    return v == Variant::R ? known_r(n, m) : known_s(n, m);
}

Residue reduce_combo(const RationalCombo& combo, const BernoulliTable& table) {
    Residue acc{0, table.p};
    for (const auto& [mono, c] : combo.terms()) {
        acc = acc + reduce_rational(c, table.p) * eval_monomial(mono, table);
    }
    return acc;
}

Rational gamma_coeff(int n, int m, int a) {
    if (n < 2 || m < 1 || m > n - 1 || a < 1 || a > n - 1) {
        throw PreconditionViolated(
            "gamma_coeff needs n >= 2 and 1 <= m, a <= n-1");
    }
    Rational g(binomial(n - 2, m - 1) * factorial(a - 1) * factorial(n - 1 - a),
               factorial(n - 1));
    if ((m + a) % 2 != 0) g = -g;
    return g;
}

RationalCombo s_lift_combo(int n, int m) {
    if (n < 2 || m < 1 || m > n - 1) {
        throw PreconditionViolated("s_lift_combo needs 1 <= m <= n-1");
    }
    RationalCombo out(n);
    for (int a = 1; a <= n - 1; ++a) {
        RationalCombo t = s_closed_form(n, a);
        t *= gamma_coeff(n, m, a);
        out += t;
    }
    return out;
}

namespace {

void check_predict_inputs(int n, int m, std::int64_t p, int r) {
    if (n < 2 || m < 1 || r < 1) {
        throw PreconditionViolated("prediction needs n >= 2, m >= 1, r >= 1");
    }
    if (!is_prime(p) || p < n + 3) {
        throw PreconditionViolated("prediction needs a prime p >= n + 3");
    }
    if (m % p == 0) {
        throw PreconditionViolated("prediction needs p not dividing m");
    }
}

} // namespace

Residue predict_S(int n, int m, std::int64_t p, int r) {
    check_predict_inputs(n, m, p, r);
    PrimePowerModulus pp(p, r);
    if (r == 1) {
        BernoulliTable table = bernoulli_table(p);
        return reduce_combo(s_closed_form(n, m), table);
    }
    if (m > n - 1) {
        throw PreconditionViolated("lifted prediction needs m <= n - 1");
    }
    if (r == 2) {
        BernoulliTable table = bernoulli_table(p);
        Residue base = reduce_combo(s_lift_combo(n, m), table); // mod p
        return Residue{base.value * p % pp.modulus, pp.modulus};
    }
    Residue s2 = predict_S(n, 1, p, 2);
    BigInt c = binomial(n - 2, m - 1);
    if (m % 2 == 0) c = -c;
    return mod_reduce(BigInt(s2.value) * c * (pp.modulus / (p * p)),
                      pp.modulus);
}

Residue predict_R(int n, int m, std::int64_t p, int r) {
    check_predict_inputs(n, m, p, r);
    PrimePowerModulus pp(p, r);
    if (r == 1) {
        BernoulliTable table = bernoulli_table(p);
        return reduce_combo(r_closed_form(n, m), table);
    }
    Residue s2 = predict_S(n, 1, p, 2);
    return mod_reduce(BigInt(s2.value) * m * (pp.modulus / (p * p)),
                      pp.modulus);
}

namespace {

// poly * (x - c), coefficients ascending.
std::vector<Rational> mul_linear(const std::vector<Rational>& poly,
                                 const Rational& c) {
    std::vector<Rational> out(poly.size() + 1, Rational(0));
    for (std::size_t t = 0; t < poly.size(); ++t) {
        out[t + 1] += poly[t];
        out[t] -= c * poly[t];
    }
    return out;
}

void trim_poly(std::vector<Rational>& poly) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

} // namespace

std::vector<Rational> interpolate_polynomial(
    const std::vector<std::pair<Rational, Rational>>& points) {
    std::vector<Rational> acc(points.size(), Rational(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational den(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = mul_linear(basis, points[j].first);
            den *= points[i].first - points[j].first;
        }
        if (den == 0) {
            throw PreconditionViolated(
                "interpolation points must have distinct x");
        }
        const Rational scale = points[i].second / den;
        for (std::size_t t = 0; t < basis.size(); ++t) {
            acc[t] += basis[t] * scale;
        }
    }
    trim_poly(acc);
    return acc;
}

Rational eval_polynomial(const std::vector<Rational>& coeffs,
                         const Rational& x) {
    Rational v(0);
    for (std::size_t i = coeffs.size(); i > 0; --i) {
        v = v * x + coeffs[i - 1];
    }
    return v;
}

std::vector<CoefficientPolynomial> interp_coefficients(int n,
                                                       int degree_bound) {
    if (n < 2 || degree_bound < 0) {
        throw PreconditionViolated(
            "interp_coefficients needs n >= 2 and degree_bound >= 0");
    }
    const int D = degree_bound;
    std::vector<RationalCombo> samples;
    samples.reserve(static_cast<std::size_t>(D) + 3);
    for (int m = 1; m <= D + 3; ++m) samples.push_back(r_closed_form(n, m));

    std::vector<CoefficientPolynomial> out;
    for (const auto& mono : odd_partitions(n)) {
        std::vector<std::pair<Rational, Rational>> pts;
        pts.reserve(static_cast<std::size_t>(D) + 1);
        for (int m = 1; m <= D + 1; ++m) {
            pts.emplace_back(Rational(m),
                             samples[static_cast<std::size_t>(m - 1)]
                                 .coefficient(mono));
        }
        auto poly = interpolate_polynomial(pts);
        for (int m = D + 2; m <= D + 3; ++m) {
            if (eval_polynomial(poly, Rational(m)) !=
                samples[static_cast<std::size_t>(m - 1)].coefficient(mono)) {
                throw InterpolationMismatch(
                    "coefficient of " + monomial_label(mono) +
                    " is not a degree <= " + std::to_string(D) +
                    " polynomial in m");
            }
        }
        out.push_back({mono, std::move(poly)});
    }
    return out;
}

namespace {

// Direct-expression cell for a (m, n-parity, depth) class: the coefficient
// per ordered tuple divided by n!, as a function of the weight variable so
// it can also be evaluated at -n for the flip test. Cells whose bracket
// depends on the part values (or that have no trusted direct expression)
// are marked not flippable.
struct CellForms {
    bool flippable = false;
    std::function<Rational(const Rational&)> r, s;
};

bool lookup_cell(int m, bool odd_n, int depth, CellForms& out) {
    auto constant = [](const Rational& c) {
        return [c](const Rational&) { return c; };
    };
    auto linear = [](int num_shift, const Rational& den) {
        // (x + num_shift) / den
        return [num_shift, den](const Rational& x) {
            return (x + num_shift) / den;
        };
    };
    auto neg_linear = [](int num_shift, const Rational& den) {
        // -(x - num_shift) / den
        return [num_shift, den](const Rational& x) {
            return -(x - num_shift) / den;
        };
    };
    out = CellForms{};
    if (odd_n) {
        switch (m * 10 + depth) {
        case 33:
            out = {true, constant(Rational(1, 6)), constant(Rational(1, 6))};
            return true;
        case 43:
            out = {true, linear(3, 12), neg_linear(3, 12)};
            return true;
        case 55:
            out = {true, constant(Rational(1, 120)),
                   constant(Rational(1, 120))};
            return true;
        case 53: // bracket depends on part values
        case 63: // bracket depends on part values
            return true;
        case 65:
            out = {true, linear(5, 240), neg_linear(5, 240)};
            return true;
        default:
            return false;
        }
    }
    switch (m * 10 + depth) {
    case 22:
        out = {true, constant(Rational(1, 2)), constant(Rational(1, 2))};
        return true;
    case 32:
        out = {true, linear(2, 4), neg_linear(2, 4)};
        return true;
    case 44:
        out = {true, constant(Rational(1, 24)), constant(Rational(1, 24))};
        return true;
    case 54:
        out = {true, linear(4, 48), neg_linear(4, 48)};
        return true;
    case 66:
        out = {true, constant(Rational(1, 720)), constant(Rational(1, 720))};
        return true;
    case 42: // bracket depends on part values
    case 52: // bracket depends on part values
    case 62: // bracket depends on part values
        return true;
    default:
        // (6, even, 4) lands here too: no trusted direct expression.
        return false;
    }
}

// Part-value family test for singleton monomials: fit the coefficient of
// {x} in pipeline(x, m) / x! over odd x > m, validate the fit on two fresh
// samples, then compare the R and S fits under x -> -x.
std::pair<ProbeStatus, std::string> depth1_probe(int m) {
    int x0 = (m % 2 == 0) ? m + 1 : m + 2;
    if (x0 < 3) x0 = 3;
    const int npts = m + 2;
    std::vector<std::pair<Rational, Rational>> rp, sp;
    for (int i = 0; i < npts; ++i) {
        const int x = x0 + 2 * i;
        const Rational xf{factorial(x)};
        const BetaMonomial mono{std::vector<int>{x}};
        rp.emplace_back(Rational(x),
                        r_closed_form(x, m).coefficient(mono) / xf);
        sp.emplace_back(Rational(x),
                        s_closed_form(x, m).coefficient(mono) / xf);
    }
    auto head = [](const std::vector<std::pair<Rational, Rational>>& v,
                   int k) {
        return std::vector<std::pair<Rational, Rational>>(
            v.begin(), v.begin() + k);
    };
    auto rfit = interpolate_polynomial(head(rp, m));
    auto sfit = interpolate_polynomial(head(sp, m));
    for (int i = m; i < npts; ++i) {
        if (eval_polynomial(rfit, rp[static_cast<std::size_t>(i)].first) !=
                rp[static_cast<std::size_t>(i)].second ||
            eval_polynomial(sfit, sp[static_cast<std::size_t>(i)].first) !=
                sp[static_cast<std::size_t>(i)].second) {
            return {ProbeStatus::Fail,
                    "fitted part-value family fails on a fresh sample"};
        }
    }
    const std::size_t deg = std::max(rfit.size(), sfit.size());
    for (std::size_t i = 0; i < deg; ++i) {
        Rational rc = i < rfit.size() ? rfit[i] : Rational(0);
        const Rational sc = i < sfit.size() ? sfit[i] : Rational(0);
        if (i % 2 == 1) rc = -rc; // coefficient of x^i under x -> -x
        if (sc != rc) {
            return {ProbeStatus::Fail,
                    "flip x -> -x does not map the R family to the S family"};
        }
    }
    return {ProbeStatus::Pass,
            "part-value family fitted from data; flip verified"};
}

} // namespace

ProbeReport conjecture_probe(int n) {
    if (n < 2) throw PreconditionViolated("conjecture_probe needs n >= 2");
    ProbeReport report;
    report.n = n;
    const bool odd = (n % 2 != 0);
    const Rational nf{factorial(n)};

    std::vector<RationalCombo> rs, ss;
    for (int m = 1; m <= 6; ++m) {
        rs.push_back(r_closed_form(n, m));
        ss.push_back(s_closed_form(n, m));
    }
    std::map<int, std::pair<ProbeStatus, std::string>> depth1_cache;

    for (const auto& mono : odd_partitions(n)) {
        const int d = mono.depth();
        for (int m = 1; m <= 6; ++m) {
            ProbeEntry e;
            e.monomial = mono;
            e.m = m;
            const RationalCombo& rc = rs[static_cast<std::size_t>(m - 1)];
            const RationalCombo& sc = ss[static_cast<std::size_t>(m - 1)];
            if (d > m) {
                // A depth-d monomial needs at least d window blocks.
                const bool vanish = rc.coefficient(mono) == 0 &&
                                    sc.coefficient(mono) == 0;
                e.status = vanish ? ProbeStatus::Pass : ProbeStatus::Fail;
                e.note = vanish ? "family vanishes on both sides"
                                : "expected vanishing family is nonzero";
            } else if (d == 1) {
                auto it = depth1_cache.find(m);
                if (it == depth1_cache.end()) {
                    it = depth1_cache.emplace(m, depth1_probe(m)).first;
                }
                e.status = it->second.first;
                e.note = it->second.second;
            } else {
                CellForms cell;
                if (!lookup_cell(m, odd, d, cell)) {
                    e.status = ProbeStatus::Inconclusive;
                    e.note = "no direct expression tabulated for this cell";
                } else if (!cell.flippable) {
                    e.status = ProbeStatus::Inconclusive;
                    e.note = "direct expression mixes part values into the "
                             "bracket; flip not applicable";
                } else {
                    const Rational rn = cell.r(Rational(n));
                    const Rational sn = cell.s(Rational(n));
                    const bool flip_ok =
                        sn == cell.r(Rational(-n)) &&
                        rn == cell.s(Rational(-n));
                    const Rational scale =
                        nf * Rational(ordered_tuple_count(mono));
                    const bool sane = rc.coefficient(mono) == rn * scale &&
                                      sc.coefficient(mono) == sn * scale;
                    if (flip_ok && sane) {
                        e.status = ProbeStatus::Pass;
                        e.note = "flip verified; matches both pipelines";
                    } else {
                        e.status = ProbeStatus::Fail;
                        e.note = sane ? "flip test fails"
                                      : "direct expression disagrees with "
                                        "the pipeline";
                    }
                }
            }
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

std::string rational_to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

namespace {

std::string monomial_text(const BetaMonomial& mono) {
    std::string out;
    const auto& ix = mono.indices();
    std::size_t i = 0;
    while (i < ix.size()) {
        std::size_t j = i;
        while (j < ix.size() && ix[j] == ix[i]) ++j;
        out += "β" + std::to_string(ix[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string monomial_latex(const BetaMonomial& mono) {
    std::string out;
    const auto& ix = mono.indices();
    std::size_t i = 0;
    while (i < ix.size()) {
        std::size_t j = i;
        while (j < ix.size() && ix[j] == ix[i]) ++j;
        out += "\\beta_{" + std::to_string(ix[i]) + "}";
        if (j - i > 1) out += "^{" + std::to_string(j - i) + "}";
        i = j;
    }
    return out;
}

std::string rational_to_latex(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return "\\frac{" + num.str() + "}{" + den.str() + "}";
}

} // namespace

std::string combo_to_text(const RationalCombo& combo) {
    if (combo.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : combo.terms()) {
        const bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += rational_to_string(neg ? Rational(-c) : c);
        if (!mono.indices().empty()) out += "·" + monomial_text(mono);
    }
    return out;
}

std::string combo_to_latex(const RationalCombo& combo) {
    if (combo.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : combo.terms()) {
        const bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += rational_to_latex(neg ? Rational(-c) : c);
        out += monomial_latex(mono);
    }
    return out;
}

std::string combo_to_json(const RationalCombo& combo) {
    nlohmann::ordered_json j;
    j["weight"] = combo.weight();
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [mono, c] : combo.terms()) {
        nlohmann::ordered_json t;
        t["monomial"] = mono.indices();
        t["num"] = boost::multiprecision::numerator(c).str();
        t["den"] = boost::multiprecision::denominator(c).str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

} // namespace supercong
