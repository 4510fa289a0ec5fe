#include "supercong/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include <json.hpp>

#include "supercong/bernoulli.hpp"
#include "supercong/closedforms.hpp"
#include "supercong/enumerate.hpp"

namespace supercong {

Summary SweepReport::summary() const {
    Summary s;
    for (const auto& rec : records) {
        switch (rec.status) {
        case CheckStatus::Pass: ++s.passed; break;
        case CheckStatus::Fail: ++s.failed; break;
        case CheckStatus::Skipped: ++s.skipped; break;
        }
    }
    return s;
}

bool SweepReport::all_passed() const { return summary().failed == 0; }

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;
using Cell = std::function<VerificationRecord()>;

std::string i2s(std::int64_t v) { return std::to_string(v); }

std::int64_t pow64(std::int64_t p, int r) {
    std::int64_t v = 1;
    for (int i = 0; i < r; ++i) v *= p;
    return v;
}

std::string tuple_str(const std::vector<int>& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

int resolve(int v, int dflt) { return v < 0 ? dflt : v; }
std::int64_t resolve64(std::int64_t v, std::int64_t dflt) {
    return v < 0 ? dflt : v;
}

VerificationRecord skip_record(const std::string& check_id,
                               const Params& params,
                               const std::string& modulus,
                               const std::string& reason) {
    VerificationRecord rec;
    rec.check_id = check_id;
    rec.params = params;
    rec.modulus = modulus;
    rec.status = CheckStatus::Skipped;
    rec.skip_reason = reason;
    return rec;
}

// Run body() into a pass/fail record; the taxonomy exceptions become skips.
VerificationRecord checked_record(
    const std::string& check_id, const Params& params,
    const std::string& modulus,
    const std::function<std::pair<std::string, std::string>()>& body) {
    VerificationRecord rec;
    rec.check_id = check_id;
    rec.params = params;
    rec.modulus = modulus;
    try {
        auto [lhs, rhs] = body();
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.status = lhs == rhs ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const DenominatorNotInvertible&) {
        rec.status = CheckStatus::Skipped;
        rec.skip_reason = "denominator-not-invertible";
    } catch (const WorkBudgetExceeded&) {
        rec.status = CheckStatus::Skipped;
        rec.skip_reason = "budget";
    } catch (const PreconditionViolated&) {
        rec.status = CheckStatus::Skipped;
        rec.skip_reason = "precondition";
    } catch (const InvalidGapCount&) {
        rec.status = CheckStatus::Skipped;
        rec.skip_reason = "precondition";
    }
    return rec;
}

// Evaluate all cells into a pre-sized vector with an atomic work index, so
// the result is position-stable no matter how many workers run.
std::vector<VerificationRecord> run_cells(const std::vector<Cell>& cells,
                                          int threads) {
    std::vector<VerificationRecord> recs(cells.size());
    const std::size_t count = cells.size();
    std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) recs[i] = cells[i]();
        return recs;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&cells, &recs, &next, count] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                recs[i] = cells[i]();
            }
        });
    }
    for (auto& th : pool) th.join();
    return recs;
}

void sort_records(std::vector<VerificationRecord>& recs) {
    auto key_of = [](const VerificationRecord& rec,
                     const char* name) -> std::int64_t {
        for (const auto& [k, v] : rec.params) {
            if (k == name) return std::stoll(v);
        }
        return 0;
    };
    std::stable_sort(
        recs.begin(), recs.end(),
        [&](const VerificationRecord& a, const VerificationRecord& b) {
            if (a.check_id != b.check_id) return a.check_id < b.check_id;
            for (const char* k : {"p", "n", "m", "r"}) {
                const auto ka = key_of(a, k);
                const auto kb = key_of(b, k);
                if (ka != kb) return ka < kb;
            }
            return false;
        });
}

std::map<std::int64_t, BernoulliTable> make_tables(
    const std::vector<std::int64_t>& primes, const std::string& cache_dir) {
    std::map<std::int64_t, BernoulliTable> tables;
    for (auto p : primes) tables.emplace(p, bernoulli_table_cached(p, cache_dir));
    return tables;
}

// (coeff mod p) * (B_index mod p) * p, as a residue mod p^2.
Residue lift_to_p2(const Rational& coeff, int b_index,
                   const BernoulliTable& tab) {
    const std::int64_t p = tab.p;
    const Residue c = reduce_rational(coeff, p);
    const Residue b = bernoulli_mod(b_index, tab);
    const std::int64_t v = c.value * b.value % p;
    return Residue{v * p, p * p};
}

std::pair<std::string, std::string> residue_pair(const Residue& lhs,
                                                 const Residue& rhs) {
    return {i2s(lhs.value), i2s(rhs.value)};
}

// ---------------------------------------------------------------- main ----

VerificationRecord main_cell(Variant v, int n, int m, std::int64_t p, int r,
                             const VerifyOptions& opts) {
    const std::string check = v == Variant::R ? "main.R" : "main.S";
    const Params params{
        {"p", i2s(p)}, {"n", i2s(n)}, {"m", i2s(m)}, {"r", i2s(r)}};
    BigInt mod_big = 1;
    for (int i = 0; i < r; ++i) mod_big *= p;
    const std::string mod_str = mod_big.str();
    if (p < n + 3 || m % p == 0 ||
        (v == Variant::S && r >= 2 && m > n - 1)) {
        return skip_record(check, params, mod_str, "precondition");
    }
    return checked_record(check, params, mod_str, [&] {
        SumSpec spec(v, n, m, PrimePowerModulus(p, r));
        const Residue lhs = eval_conv(spec, opts.conv_budget);
        const Residue rhs =
            v == Variant::R ? predict_R(n, m, p, r) : predict_S(n, m, p, r);
        return residue_pair(lhs, rhs);
    });
}

// --------------------------------------------------------------- lemmas ---

SweepReport sweep_uab(const LemmaGrid& g, const VerifyOptions& opts) {
    const int d_max = resolve(g.d_max, 3);
    const int w_max = resolve(g.w_max, 5);
    const int kappa_max = resolve(g.kappa_max, 3);
    const int alpha_max = resolve(g.alpha_max, 2);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 32);
    SweepReport report;
    report.config = {{"sweep", "lemma"},        {"name", "uab"},
                     {"p_min", i2s(p_min)},     {"p_max", i2s(p_max)},
                     {"kappa_max", i2s(kappa_max)},
                     {"alpha_max", i2s(alpha_max)},
                     {"d_max", i2s(d_max)},     {"w_max", i2s(w_max)},
                     {"nested_budget", i2s(opts.nested_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    const auto tables = make_tables(primes, opts.cache_dir);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int kappa = 1; kappa <= kappa_max; ++kappa) {
            for (int alpha = 0; alpha <= alpha_max; ++alpha) {
                for (int d = 1; d <= d_max; ++d) {
                    for (int w = d; w <= w_max; ++w) {
                        for_each_composition(
                            w, d, [&](const std::vector<int>& s) {
                                const std::vector<int> sv = s;
                                const BernoulliTable& tab = tables.at(p);
                                cells.push_back([p, kappa, alpha, sv, w, d,
                                                 &tab, &opts] {
                                    const Params params{
                                        {"p", i2s(p)},
                                        {"kappa", i2s(kappa)},
                                        {"alpha", i2s(alpha)},
                                        {"d", i2s(d)},
                                        {"weight", i2s(w)},
                                        {"s", tuple_str(sv)}};
                                    const std::string mod = i2s(p * p);
                                    if (w > p - 3) {
                                        return skip_record("lemma.uab", params,
                                                           mod,
                                                           "precondition");
                                    }
                                    return checked_record(
                                        "lemma.uab", params, mod, [&] {
                                            const WindowSpec win{alpha, kappa,
                                                                 p};
                                            const Residue lhs = u_sum(
                                                win, sv, opts.nested_budget);
                                            Rational coeff =
                                                Rational(BigInt(kappa) * w,
                                                         BigInt(w + 1)) *
                                                Rational(factorial(d - 1));
                                            if (d % 2 == 0) coeff = -coeff;
                                            const Residue rhs = lift_to_p2(
                                                coeff,
                                                static_cast<int>(p - w - 1),
                                                tab);
                                            return residue_pair(lhs, rhs);
                                        });
                                });
                                return true;
                            });
                    }
                }
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_xi(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 5);
    const int kappa_max = resolve(g.kappa_max, 3);
    const int alpha_max = resolve(g.alpha_max, 2);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 32);
    SweepReport report;
    report.config = {{"sweep", "lemma"},        {"name", "xi"},
                     {"p_min", i2s(p_min)},     {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)},     {"kappa_max", i2s(kappa_max)},
                     {"alpha_max", i2s(alpha_max)},
                     {"nested_budget", i2s(opts.nested_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    const auto tables = make_tables(primes, opts.cache_dir);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int kappa = 1; kappa <= kappa_max; ++kappa) {
                for (int alpha = 0; alpha <= alpha_max; ++alpha) {
                    const BernoulliTable& tab = tables.at(p);
                    cells.push_back([p, n, kappa, alpha, &tab, &opts] {
                        const Params params{{"p", i2s(p)},
                                            {"n", i2s(n)},
                                            {"kappa", i2s(kappa)},
                                            {"alpha", i2s(alpha)}};
                        const std::string mod = i2s(p * p);
                        if (p < n + 2) {
                            return skip_record("cor.xi", params, mod,
                                               "precondition");
                        }
                        return checked_record("cor.xi", params, mod, [&] {
                            const WindowSpec win{alpha, kappa, p};
                            const Residue lhs =
                                xi_sum(win, n, opts.nested_budget);
                            const Rational coeff(
                                binomial(kappa, n) -
                                    binomial(kappa + n - 1, n),
                                BigInt(n));
                            const Residue rhs = lift_to_p2(
                                coeff, static_cast<int>(p - n), tab);
                            return residue_pair(lhs, rhs);
                        });
                    });
                }
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_pgap(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 6);
    const int kappa_max = resolve(g.kappa_max, 4);
    const int alpha_max = resolve(g.alpha_max, 2);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 32);
    SweepReport report;
    report.config = {{"sweep", "lemma"},        {"name", "pgap"},
                     {"p_min", i2s(p_min)},     {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)},     {"kappa_max", i2s(kappa_max)},
                     {"alpha_max", i2s(alpha_max)},
                     {"nested_budget", i2s(opts.nested_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    const auto tables = make_tables(primes, opts.cache_dir);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int kappa = 2; kappa <= kappa_max; ++kappa) {
                for (int alpha = 0; alpha <= alpha_max; ++alpha) {
                    for (int gap = 1; gap <= kappa - 1; ++gap) {
                        const BernoulliTable& tab = tables.at(p);
                        cells.push_back([p, n, kappa, alpha, gap, &tab,
                                         &opts] {
                            const Params params{{"p", i2s(p)},
                                                {"n", i2s(n)},
                                                {"kappa", i2s(kappa)},
                                                {"alpha", i2s(alpha)},
                                                {"g", i2s(gap)}};
                            const std::string mod = i2s(p * p);
                            if (p < n + 2 || gap > n - 2) {
                                return skip_record("prop.pgap", params, mod,
                                                   "precondition");
                            }
                            return checked_record(
                                "prop.pgap", params, mod, [&] {
                                    const WindowSpec win{alpha, kappa, p};
                                    const Residue lhs = pgap_sum(
                                        win, gap, n, opts.nested_budget);
                                    Rational coeff(
                                        binomial(kappa, gap + 1) *
                                            binomial(n - 1, gap),
                                        BigInt(n));
                                    if (gap % 2 == 0) coeff = -coeff;
                                    const Residue rhs = lift_to_p2(
                                        coeff, static_cast<int>(p - n), tab);
                                    return residue_pair(lhs, rhs);
                                });
                        });
                    }
                }
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

// Shared driver for the four window-chain sums of the final section: V has
// a closed form mod p^2, M/E/F vanish mod p.
SweepReport sweep_vmef(const std::string& name, const LemmaGrid& g,
                       const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 6);
    const int kappa_max = resolve(g.kappa_max, 3);
    const auto p_min = resolve64(g.p_min, 7);
    const auto p_max = resolve64(g.p_max, 14);
    const bool is_v = name == "vsum";
    const std::string check = "lemma." + name;
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", name},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"kappa_max", i2s(kappa_max)},
                     {"nested_budget", i2s(opts.nested_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    const auto tables = make_tables(primes, opts.cache_dir);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int kappa = 2; kappa <= kappa_max; ++kappa) {
                for (int gap = 1; gap <= kappa - 1; ++gap) {
                    const BernoulliTable& tab = tables.at(p);
                    cells.push_back([name, check, is_v, p, n, kappa, gap,
                                     &tab, &opts] {
                        const Params params{{"p", i2s(p)},
                                            {"n", i2s(n)},
                                            {"kappa", i2s(kappa)},
                                            {"g", i2s(gap)}};
                        const std::string mod = is_v ? i2s(p * p) : i2s(p);
                        const std::int64_t p_floor = is_v ? n + 2 : n + 3;
                        if (p < p_floor || gap > n - 2) {
                            return skip_record(check, params, mod,
                                               "precondition");
                        }
                        return checked_record(check, params, mod, [&] {
                            if (is_v) {
                                const Residue lhs = v_sum(
                                    kappa, gap, n, p, opts.nested_budget);
                                Rational coeff(binomial(kappa, gap + 1) *
                                                   binomial(n - 1, gap),
                                               BigInt(n));
                                if (gap % 2 == 0) coeff = -coeff;
                                const Residue rhs = lift_to_p2(
                                    coeff, static_cast<int>(p - n), tab);
                                return residue_pair(lhs, rhs);
                            }
                            Residue lhs{0, p};
                            if (name == "msum") {
                                lhs = m_sum(kappa, gap, n, p,
                                            opts.nested_budget);
                            } else if (name == "esum") {
                                lhs = e_sum(kappa, gap, n, p,
                                            opts.nested_budget);
                            } else {
                                lhs = f_sum(kappa, gap, n, p,
                                            opts.nested_budget);
                            }
                            return residue_pair(lhs, Residue{0, p});
                        });
                    });
                }
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_tsum(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 5);
    const int m_max = resolve(g.m_max, 2);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 8);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "tsum"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"m_max", i2s(m_max)},
                     {"nested_budget", i2s(opts.nested_budget)},
                     {"brute_budget", i2s(opts.brute_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 3; n <= n_max; ++n) {
            for (int m = 1; m <= m_max; ++m) {
                cells.push_back([p, n, m, &opts] {
                    const Params params{
                        {"p", i2s(p)}, {"n", i2s(n)}, {"m", i2s(m)}};
                    return checked_record("lemma.tsum", params, "0", [&] {
                        SumSpec spec(Variant::R, n, m,
                                     PrimePowerModulus(p, 1));
                        const Rational lhs =
                            eval_brute_rational(spec, opts.brute_budget);
                        Rational pinned(0);
                        for (int ell = 1; 2 * ell <= n; ++ell) {
                            pinned +=
                                t_sum(n, ell, m, p, opts.nested_budget);
                        }
                        const Rational rhs =
                            Rational(factorial(n), BigInt(m) * p) * pinned;
                        return std::pair<std::string, std::string>(
                            rational_to_string(lhs), rational_to_string(rhs));
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_sym(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 8);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 32);
    const int r = resolve(g.r, 1);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "sym"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"r", i2s(r)},
                     {"conv_budget", i2s(opts.conv_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int k = 1; k <= n - 1; ++k) {
                cells.push_back([p, n, k, r, &opts] {
                    const Params params{{"p", i2s(p)},
                                        {"n", i2s(n)},
                                        {"m", i2s(k)},
                                        {"r", i2s(r)}};
                    const std::string mod = i2s(pow64(p, r));
                    if (n >= p - 1) {
                        return skip_record("lemma.sym", params, mod,
                                           "precondition");
                    }
                    return checked_record("lemma.sym", params, mod, [&] {
                        const PrimePowerModulus pp(p, r);
                        const Residue lhs = eval_conv(
                            SumSpec(Variant::S, n, k, pp), opts.conv_budget);
                        Residue rhs = eval_conv(
                            SumSpec(Variant::S, n, n - k, pp),
                            opts.conv_budget);
                        if (n % 2 != 0) rhs = -rhs;
                        return residue_pair(lhs, rhs);
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_lift(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 8);
    const int m_cap = resolve(g.m_max, 7);
    const auto p_min = resolve64(g.p_min, 11);
    const auto p_max = resolve64(g.p_max, 32);
    const int r = resolve(g.r, 2);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "lift"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"m_max", i2s(m_cap)},
                     {"r", i2s(r)},
                     {"conv_budget", i2s(opts.conv_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int m = 1; m <= std::min(m_cap, n - 1); ++m) {
                cells.push_back([p, n, m, r, &opts] {
                    const Params params{{"p", i2s(p)},
                                        {"n", i2s(n)},
                                        {"m", i2s(m)},
                                        {"r", i2s(r)}};
                    const std::string mod = i2s(pow64(p, r));
                    if (n >= p - 1 || r < 2) {
                        return skip_record("lemma.lift", params, mod,
                                           "precondition");
                    }
                    return checked_record("lemma.lift", params, mod, [&] {
                        const PrimePowerModulus pp(p, r);
                        const PrimePowerModulus pp_low(p, r - 1);
                        const Residue lhs = eval_conv(
                            SumSpec(Variant::S, n, m, pp), opts.conv_budget);
                        Residue folded{0, pp_low.modulus};
                        for (int a = 1; a <= n - 1; ++a) {
                            const Residue ga = reduce_rational(
                                gamma_coeff(n, m, a), pp_low.modulus);
                            const Residue sa = eval_conv(
                                SumSpec(Variant::S, n, a, pp_low),
                                opts.conv_budget);
                            folded = folded + ga * sa;
                        }
                        const Residue rhs{folded.value * p % pp.modulus,
                                          pp.modulus};
                        return residue_pair(lhs, rhs);
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_lift3(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 6);
    const int m_cap = resolve(g.m_max, 5);
    const auto p_min = resolve64(g.p_min, 11);
    const auto p_max = resolve64(g.p_max, 14);
    const int r = resolve(g.r, 3);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "lift3"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"m_max", i2s(m_cap)},
                     {"r", i2s(r)},
                     {"conv_budget", i2s(opts.conv_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int m = 1; m <= std::min(m_cap, n - 1); ++m) {
                cells.push_back([p, n, m, r, &opts] {
                    const Params params{{"p", i2s(p)},
                                        {"n", i2s(n)},
                                        {"m", i2s(m)},
                                        {"r", i2s(r)}};
                    const std::string mod = i2s(pow64(p, r));
                    if (n >= p - 1 || r < 2) {
                        return skip_record("lemma.lift3", params, mod,
                                           "precondition");
                    }
                    return checked_record("lemma.lift3", params, mod, [&] {
                        const PrimePowerModulus pp(p, r);
                        const Residue lhs = eval_conv(
                            SumSpec(Variant::S, n, m, pp), opts.conv_budget);
                        const Residue base = eval_conv(
                            SumSpec(Variant::S, n, 1, PrimePowerModulus(p, 2)),
                            opts.conv_budget);
                        BigInt c = binomial(n - 2, m - 1);
                        if (m % 2 == 0) c = -c;
                        const Residue rhs =
                            mod_reduce(BigInt(base.value) * c *
                                           (pp.modulus / (p * p)),
                                       pp.modulus);
                        return residue_pair(lhs, rhs);
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_rms1(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 8);
    const int m_max = resolve(g.m_max, 4);
    const auto p_min = resolve64(g.p_min, 11);
    const auto p_max = resolve64(g.p_max, 32);
    const int r = resolve(g.r, 2);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "rms1"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"m_max", i2s(m_max)},
                     {"r", i2s(r)},
                     {"conv_budget", i2s(opts.conv_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int m = 1; m <= m_max; ++m) {
                cells.push_back([p, n, m, r, &opts] {
                    const Params params{{"p", i2s(p)},
                                        {"n", i2s(n)},
                                        {"m", i2s(m)},
                                        {"r", i2s(r)}};
                    const std::string mod = i2s(pow64(p, r));
                    if (r < 2 || m % p == 0) {
                        return skip_record("lemma.rms1", params, mod,
                                           "precondition");
                    }
                    return checked_record("lemma.rms1", params, mod, [&] {
                        const PrimePowerModulus pp(p, r);
                        const Residue lhs = eval_conv(
                            SumSpec(Variant::R, n, m, pp), opts.conv_budget);
                        const Residue base = eval_conv(
                            SumSpec(Variant::S, n, 1, PrimePowerModulus(p, 2)),
                            opts.conv_budget);
                        const Residue rhs =
                            mod_reduce(BigInt(base.value) * m *
                                           (pp.modulus / (p * p)),
                                       pp.modulus);
                        return residue_pair(lhs, rhs);
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_incexc(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 8);
    const int m_max = resolve(g.m_max, 4);
    const auto p_min = resolve64(g.p_min, 5);
    const auto p_max = resolve64(g.p_max, 32);
    const int r = resolve(g.r, 1);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "incexc"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}, {"m_max", i2s(m_max)},
                     {"r", i2s(r)},
                     {"conv_budget", i2s(opts.conv_budget)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            for (int m = 1; m <= m_max; ++m) {
                cells.push_back([p, n, m, r, &opts] {
                    const Params params{{"p", i2s(p)},
                                        {"n", i2s(n)},
                                        {"m", i2s(m)},
                                        {"r", i2s(r)}};
                    const std::string mod = i2s(pow64(p, r));
                    bool divisible = false;
                    for (int k = 0; k < m; ++k) {
                        if ((m - k) % p == 0) divisible = true;
                    }
                    if (divisible) {
                        return skip_record("lemma.incexc", params, mod,
                                           "precondition");
                    }
                    return checked_record("lemma.incexc", params, mod, [&] {
                        const PrimePowerModulus pp(p, r);
                        const Residue lhs = eval_conv(
                            SumSpec(Variant::S, n, m, pp), opts.conv_budget);
                        Residue rhs{0, pp.modulus};
                        for (int k = 0; k < m; ++k) {
                            BigInt c = binomial(n, k);
                            if (k % 2 == 1) c = -c;
                            const Residue term = eval_conv(
                                SumSpec(Variant::R, n, m - k, pp),
                                opts.conv_budget);
                            rhs = rhs + mod_reduce(c, pp.modulus) * term;
                        }
                        return residue_pair(lhs, rhs);
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_ga(const LemmaGrid& g, const VerifyOptions& opts) {
    const int kappa_max = resolve(g.kappa_max, 8);
    SweepReport report;
    report.config = {{"sweep", "lemma"},
                     {"name", "ga"},
                     {"kappa_max", i2s(kappa_max)}};
    std::vector<Cell> cells;
    for (int kappa = 2; kappa <= kappa_max; ++kappa) {
        for (int gap = 1; gap <= kappa - 1; ++gap) {
            for (int i = 1; i <= gap; ++i) {
                cells.push_back([kappa, gap, i] {
                    const Params params{{"kappa", i2s(kappa)},
                                        {"g", i2s(gap)},
                                        {"i", i2s(i)}};
                    return checked_record("lemma.ga", params, "0", [&] {
                        const auto [lhs, rhs] =
                            chain_sum_identity(kappa, gap, i);
                        return std::pair<std::string, std::string>(
                            lhs.str(), rhs.str());
                    });
                });
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport sweep_mzv_ones(const LemmaGrid& g, const VerifyOptions& opts) {
    const int n_max = resolve(g.n_max, 6);
    const auto p_min = resolve64(g.p_min, 7);
    const auto p_max = resolve64(g.p_max, 32);
    SweepReport report;
    report.config = {{"sweep", "lemma"},    {"name", "mzv-ones"},
                     {"p_min", i2s(p_min)}, {"p_max", i2s(p_max)},
                     {"n_max", i2s(n_max)}};
    const auto primes = primes_in_range(std::max<std::int64_t>(p_min, 5), p_max);
    const auto tables = make_tables(primes, opts.cache_dir);
    std::vector<Cell> cells;
    for (auto p : primes) {
        for (int n = 2; n <= n_max; ++n) {
            const BernoulliTable& tab = tables.at(p);
            cells.push_back([p, n, &tab] {
                const Params params{{"p", i2s(p)}, {"n", i2s(n)}};
                const bool even = n % 2 == 0;
                const int r = even ? 2 : 3;
                const std::string mod = i2s(pow64(p, r));
                if (p < n + (even ? 3 : 4)) {
                    return skip_record("lemma.mzv-ones", params, mod,
                                       "precondition");
                }
                return checked_record("lemma.mzv-ones", params, mod, [&] {
                    const PrimePowerModulus pp(p, r);
                    const std::vector<int> ones(static_cast<std::size_t>(n),
                                                1);
                    const Residue lhs = mhs_mod(p, ones, pp);
                    Residue rhs{0, pp.modulus};
                    if (even) {
                        const Residue b = beta(n + 1, tab);
                        rhs = Residue{b.value * p, pp.modulus};
                    } else {
                        const Residue b = beta(n + 2, tab);
                        const std::int64_t c =
                            (n + 1) / 2 * b.value % p;
                        rhs = Residue{c * p * p, pp.modulus};
                    }
                    return residue_pair(lhs, rhs);
                });
            });
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

} // namespace

SweepReport verify_main(const MainGrid& grid, const VerifyOptions& opts) {
    SweepReport report;
    const std::string variant_str =
        !grid.variant ? "both"
                      : (*grid.variant == Variant::R ? "R" : "S");
    report.config = {{"sweep", "main"},
                     {"n_min", i2s(grid.n_min)},
                     {"n_max", i2s(grid.n_max)},
                     {"m_max", i2s(grid.m_max)},
                     {"p_min", i2s(grid.p_min)},
                     {"p_max", i2s(grid.p_max)},
                     {"r", i2s(grid.r)},
                     {"variant", variant_str},
                     {"conv_budget", i2s(opts.conv_budget)}};
    std::vector<Variant> variants;
    if (!grid.variant || *grid.variant == Variant::R) {
        variants.push_back(Variant::R);
    }
    if (!grid.variant || *grid.variant == Variant::S) {
        variants.push_back(Variant::S);
    }
    const auto primes =
        primes_in_range(std::max<std::int64_t>(grid.p_min, 2), grid.p_max);
    std::vector<Cell> cells;
    for (Variant v : variants) {
        for (auto p : primes) {
            for (int n = grid.n_min; n <= grid.n_max; ++n) {
                for (int m = 1; m <= grid.m_max; ++m) {
                    const int r = grid.r;
                    cells.push_back([v, p, n, m, r, &opts] {
                        return main_cell(v, n, m, p, r, opts);
                    });
                }
            }
        }
    }
    report.records = run_cells(cells, opts.threads);
    sort_records(report.records);
    return report;
}

SweepReport verify_lemma(const std::string& name, const LemmaGrid& grid,
                         const VerifyOptions& opts) {
    if (name == "uab") return sweep_uab(grid, opts);
    if (name == "xi") return sweep_xi(grid, opts);
    if (name == "pgap") return sweep_pgap(grid, opts);
    if (name == "vsum" || name == "msum" || name == "esum" ||
        name == "fsum") {
        return sweep_vmef(name, grid, opts);
    }
    if (name == "tsum") return sweep_tsum(grid, opts);
    if (name == "sym") return sweep_sym(grid, opts);
    if (name == "lift") return sweep_lift(grid, opts);
    if (name == "lift3") return sweep_lift3(grid, opts);
    if (name == "rms1") return sweep_rms1(grid, opts);
    if (name == "incexc") return sweep_incexc(grid, opts);
    if (name == "ga") return sweep_ga(grid, opts);
    if (name == "mzv-ones") return sweep_mzv_ones(grid, opts);
    throw UnknownLemmaName("unknown lemma sweep: " + name);
}

namespace {

std::string status_text(const VerificationRecord& rec) {
    switch (rec.status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped(" + rec.skip_reason + ")";
    }
}

std::string params_text(const VerificationRecord& rec) {
    std::string out;
    for (const auto& [k, v] : rec.params) {
        if (!out.empty()) out += " ";
        out += k + "=" + v;
    }
    return out;
}

bool parses_as_int(const std::string& v) {
    if (v.empty()) return false;
    std::size_t i = v[0] == '-' ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i) {
        if (v[i] < '0' || v[i] > '9') return false;
    }
    return true;
}

nlohmann::ordered_json value_json(const std::string& v) {
    if (parses_as_int(v)) {
        try {
            return nlohmann::ordered_json(std::stoll(v));
        } catch (const std::out_of_range&) {
            // falls through to the string form
        }
    }
    return nlohmann::ordered_json(v);
}

} // namespace

std::string render_report(const SweepReport& report, ReportFormat format) {
    const Summary sum = report.summary();
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        auto& cfg = j["config"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report.config) cfg[k] = value_json(v);
        auto records = nlohmann::ordered_json::array();
        for (const auto& rec : report.records) {
            nlohmann::ordered_json rj;
            rj["check"] = rec.check_id;
            for (const auto& [k, v] : rec.params) rj[k] = value_json(v);
            if (!rec.lhs.empty()) rj["lhs"] = rec.lhs;
            if (!rec.rhs.empty()) rj["rhs"] = rec.rhs;
            rj["modulus"] = rec.modulus;
            switch (rec.status) {
            case CheckStatus::Pass: rj["status"] = "pass"; break;
            case CheckStatus::Fail: rj["status"] = "fail"; break;
            case CheckStatus::Skipped:
                rj["status"] = "skipped";
                rj["reason"] = rec.skip_reason;
                break;
            }
            records.push_back(std::move(rj));
        }
        j["records"] = std::move(records);
        j["summary"] = {{"pass", sum.passed},
                        {"fail", sum.failed},
                        {"skipped", sum.skipped}};
        return j.dump(2);
    }

    std::vector<std::array<std::string, 6>> rows;
    rows.push_back({"check", "params", "lhs", "rhs", "modulus", "status"});
    for (const auto& rec : report.records) {
        rows.push_back({rec.check_id, params_text(rec),
                        rec.lhs.empty() ? "-" : rec.lhs,
                        rec.rhs.empty() ? "-" : rec.rhs, rec.modulus,
                        status_text(rec)});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < 6; ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < 6; ++c) {
            line += row[c];
            if (c + 1 < 6) {
                line.append(width[c] - row[c].size() + 2, ' ');
            }
        }
        out += line + "\n";
    }
    out += "pass=" + std::to_string(sum.passed) +
           ", fail=" + std::to_string(sum.failed) +
           ", skipped=" + std::to_string(sum.skipped) + " (" +
           std::to_string(sum.total()) + " checks)\n";
    return out;
}

} // namespace supercong
