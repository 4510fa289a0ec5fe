#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercong/directsums.hpp"
#include "supercong/nestedsums.hpp"

namespace supercong {

enum class CheckStatus { Pass, Fail, Skipped };

// One grid point of a sweep. lhs/rhs/modulus are decimal strings (rationals
// like "35/24" for the exact checks, whose modulus is "0"). Skipped records
// carry one of three machine-readable reasons: "precondition",
// "denominator-not-invertible", "budget".
struct VerificationRecord {
    std::string check_id; // "main.R", "lemma.uab", "prop.pgap", "cor.xi", ...
    std::vector<std::pair<std::string, std::string>> params;
    std::string lhs;
    std::string rhs;
    std::string modulus;
    CheckStatus status = CheckStatus::Skipped;
    std::string skip_reason;
};

struct Summary {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::size_t total() const { return passed + failed + skipped; }
};

// Records partition the swept grid (skips included) and are sorted by
// (check_id, p, n, m, r); enumeration order breaks the remaining ties.
// Two sweeps with equal config render byte-identically regardless of the
// worker-thread count, so the config echo never includes it.
struct SweepReport {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<VerificationRecord> records;

    Summary summary() const;
    bool all_passed() const; // no failed records (skips are fine)
};

struct VerifyOptions {
    int threads = 1;
    std::string cache_dir = ".cache";
    std::int64_t conv_budget = kDefaultConvWorkBudget;
    std::int64_t nested_budget = kDefaultNestedBudget;
    std::int64_t brute_budget = kDefaultBruteBudget;
};

// Main-theorem sweep grid: direct convolution evaluation against the
// closed-form prediction for every (variant, n, m, prime, r) cell. Cells
// with p < n+3 or p | m are skipped (the predictions need them), as are
// S-variant cells with r >= 2 and m > n-1 (outside the lift's range).
struct MainGrid {
    int n_min = 2;
    int n_max = 8;
    int m_max = 4;
    std::int64_t p_min = 5;
    std::int64_t p_max = 32; // exclusive
    int r = 1;
    std::optional<Variant> variant; // both when unset
};

SweepReport verify_main(const MainGrid& grid, const VerifyOptions& opts = {});

// Per-lemma sweep. -1 leaves a knob at the lemma's own default. Knobs a
// lemma does not use are ignored.
struct LemmaGrid {
    int n_max = -1;
    int m_max = -1;
    std::int64_t p_min = -1;
    std::int64_t p_max = -1; // exclusive
    int r = -1;
    int kappa_max = -1;
    int alpha_max = -1;
    int d_max = -1; // tuple depth (uab)
    int w_max = -1; // composition weight (uab)
};

// Known names: uab, xi, pgap, vsum, msum, esum, fsum, tsum, sym, lift,
// lift3, rms1, incexc, ga, mzv-ones. Throws UnknownLemmaName otherwise.
SweepReport verify_lemma(const std::string& name, const LemmaGrid& grid = {},
                         const VerifyOptions& opts = {});

enum class ReportFormat { Text, Json };

// Text: aligned table plus a "pass=A, fail=B, skipped=C (N checks)" line.
// Json: {"config":{...},"records":[{"check":...,"p":...,...,"lhs":"...",
// "rhs":"...","modulus":"...","status":"pass"}],"summary":{...}} with
// integral parameter values emitted as numbers and residues as decimal
// strings.
std::string render_report(const SweepReport& report, ReportFormat format);

} // namespace supercong
