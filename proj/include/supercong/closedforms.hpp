#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "supercong/bernoulli.hpp"
#include "supercong/directsums.hpp"
#include "supercong/modarith.hpp"

#include <map>

namespace supercong {

// A finite Q-linear combination of beta monomials of one fixed weight.
// Zero coefficients are never stored, so operator== is structural equality.
class RationalCombo {
public:
    explicit RationalCombo(int weight) : weight_(weight) {}

    int weight() const { return weight_; }
    const std::map<BetaMonomial, Rational>& terms() const { return terms_; }

    // Accumulate c onto the monomial's coefficient. The monomial's weight
    // must match the combo's; entries that cancel to zero are dropped.
    void add(const BetaMonomial& mono, const Rational& c);

    Rational coefficient(const BetaMonomial& mono) const;

    RationalCombo& operator+=(const RationalCombo& other);
    RationalCombo& operator*=(const Rational& scalar);

    bool operator==(const RationalCombo&) const = default;

private:
    int weight_ = 0;
    std::map<BetaMonomial, Rational> terms_;
};

// Ordered tuples of odd parts >= 3 summing to n, lexicographic:
// odd_compositions(8) = {(3,5),(5,3)}, odd_compositions(9) = {(3,3,3),(9)},
// odd_compositions(4) = {}. The two-argument form keeps only tuples with
// exactly `parts` entries.
std::vector<std::vector<int>> odd_compositions(int n);
std::vector<std::vector<int>> odd_compositions(int n, int parts);

// The corresponding multisets, i.e. every beta monomial of weight n,
// in increasing BetaMonomial order.
std::vector<BetaMonomial> odd_partitions(int n);

// Weight-n combination equal to R_n^(m)(p) / p^(r-1) as a universal
// expression in the beta's:
//   (n!/m) sum over l >= 1, 3l <= n,
//          compositions k of m into l positive parts,
//          odd compositions a of n into l parts,
//     [ prod_{j<l} 1/(k_1+...+k_j) ] * prod_j f(k_j, a_j)
// with f(k, a) = C(k+a-1, a) - C(k, a). Requires n >= 2, m >= 1.
RationalCombo r_closed_form(int n, int m);

// S-variant via inclusion-exclusion over how many parts reach the cap:
//   sum_{k=0}^{m-1} (-1)^k C(n, k) r_closed_form(n, m-k).
// Vanishes identically for m >= n.
RationalCombo s_closed_form(int n, int m);

// Hand-derived closed form for the same quantity, written without the
// generic pipeline wherever a direct expression exists (m <= 6 only,
// otherwise throws UnsupportedM). Routing notes:
//  - R, odd n in {3,5,7}: fixed-n formulas valid for every m
//      (6m, 20m(m^2+5), 42m(m^4+35m^2+84) times beta_n); the m-indexed
//      expressions below silently assume n > m and break at n = m.
//  - S, m >= n: zero (each of the m window blocks must contribute at
//    least one factor, which is impossible with fewer than m factors).
//  - R even n, m = 6: falls back to r_closed_form (no reliable direct
//    expression for that cell).
//  - S, m = 6: inclusion-exclusion over the R forms.
RationalCombo known_closed_form(Variant v, int n, int m);

// Evaluate a combo mod p by reducing each coefficient and each monomial.
// Throws DenominatorNotInvertible if p divides some denominator.
Residue reduce_combo(const RationalCombo& combo, const BernoulliTable& table);

// gamma_n^(m)(a) = (-1)^(m+a) C(n-2, m-1) (a-1)! (n-1-a)! / (n-1)!,
// for 1 <= a <= n-1, 1 <= m <= n-1.
Rational gamma_coeff(int n, int m, int a);

// The weight-n combination sum_{a=1}^{n-1} gamma_n^(m)(a) s_closed_form(n, a).
// Reduced mod p it gives S_n^(m)(p^2) / p.
RationalCombo s_lift_combo(int n, int m);

// Congruence predictions from the closed forms alone (no direct summation).
//   r = 1: reduce the closed form mod p.
//   r = 2 (S): p * s_lift_combo(n, m) reduced mod p, lifted into mod p^2.
//   r >= 3 (S): (-1)^(m-1) C(n-2, m-1) predict_S(n, 1, p, 2) p^(r-2).
//   r >= 2 (R): m * predict_S(n, 1, p, 2) * p^(r-2).
// Result lives mod p^r. Preconditions: p prime, p >= n+3, p does not
// divide m, and m <= n-1 whenever r >= 2 (the lift coefficients need it).
Residue predict_S(int n, int m, std::int64_t p, int r);
Residue predict_R(int n, int m, std::int64_t p, int r);

// Exact Lagrange interpolation through the given (x, y) points; returns
// coefficients in increasing degree with trailing zeros trimmed. The x's
// must be pairwise distinct.
std::vector<Rational> interpolate_polynomial(
    const std::vector<std::pair<Rational, Rational>>& points);
Rational eval_polynomial(const std::vector<Rational>& coeffs,
                         const Rational& x);

// Coefficient of one monomial in r_closed_form(n, m), as a polynomial in m.
struct CoefficientPolynomial {
    BetaMonomial monomial;
    std::vector<Rational> coeffs; // increasing degree, no trailing zeros
};

// Fit, for every weight-n monomial, the m-dependence of its coefficient in
// r_closed_form(n, m): interpolate degree <= degree_bound from the samples
// m = 1..degree_bound+1, then check the fit at two further sample points
// (throws InterpolationMismatch if the coefficient is not polynomial of
// that degree). Entries in increasing monomial order.
std::vector<CoefficientPolynomial> interp_coefficients(int n,
                                                       int degree_bound);
inline std::vector<CoefficientPolynomial> interp_coefficients(int n) {
    return interp_coefficients(n, n);
}

enum class ProbeStatus { Pass, Fail, Inconclusive };

struct ProbeEntry {
    BetaMonomial monomial;
    int m = 0;
    ProbeStatus status = ProbeStatus::Inconclusive;
    std::string note;
};

struct ProbeReport {
    int n = 0;
    std::vector<ProbeEntry> entries;
};

// Cross-examine, for every weight-n monomial and every m <= 6, the claim
// that the S-side coefficient is the R-side coefficient with n replaced
// by -n (normalized per ordered tuple and divided by n!). Three regimes:
//  - depth > m: both coefficients must vanish (a tuple of depth d needs
//    m >= d window blocks); checked directly against the pipeline.
//  - depth 1: the dependence on the part value is fitted from pipeline
//    data over a window of part values x > m and the fitted polynomials
//    are compared under x -> -x.
//  - depth >= 2: the direct expressions give the coefficient as a linear
//    form in n; the flip test plus agreement with the pipeline at this n
//    decide Pass/Fail. Cells whose direct expression carries a binomial
//    indicator C(3, a) that the flip cannot act on are reported
//    Inconclusive, never Pass.
ProbeReport conjecture_probe(int n);

// "-691/2730" style; plain integer when the denominator is 1.
std::string rational_to_string(const Rational& q);

// Human-readable form, e.g. "645120·β3β5 + 2016·β3^3" (middle dot U+00B7,
// ASCII minus, terms joined with " + " / " - ", "0" for the empty combo).
std::string combo_to_text(const RationalCombo& combo);

// LaTeX form, e.g. "645120\beta_{3}\beta_{5}" with \frac for non-integers.
std::string combo_to_latex(const RationalCombo& combo);

// Compact JSON: {"weight":8,"terms":[{"monomial":[3,5],"num":"645120",
// "den":"1"}]} with terms in monomial order.
std::string combo_to_json(const RationalCombo& combo);

} // namespace supercong
