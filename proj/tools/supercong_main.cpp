#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "supercong/bernoulli.hpp"
#include "supercong/closedforms.hpp"
#include "supercong/directsums.hpp"
#include "supercong/verifier.hpp"

namespace {

using namespace supercong;

std::string default_cache_dir() {
    if (const char* env = std::getenv("SUPERCONG_CACHE")) {
        if (*env != '\0') return env;
    }
    return "./.cache";
}

Variant parse_variant(const std::string& s) {
    return s == "R" ? Variant::R : Variant::S;
}

std::string monomial_label(const BetaMonomial& mono) {
    const auto& idx = mono.indices();
    if (idx.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j < idx.size() && idx[j] == idx[i]) ++j;
        out += "β" + std::to_string(idx[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

// "336·m^5 + 5040·m^3 - 5376·m" from ascending coefficients.
std::string poly_text(const std::vector<Rational>& coeffs) {
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Rational& c = coeffs[k];
        if (c == 0) continue;
        const bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        const std::string cs = rational_to_string(neg ? Rational(-c) : c);
        if (k == 0) {
            out += cs;
            continue;
        }
        const std::string pow =
            k == 1 ? "m" : "m^" + std::to_string(k);
        if (cs == "1") {
            out += pow;
        } else {
            out += cs + "·" + pow;
        }
    }
    return out.empty() ? "0" : out;
}

std::string probe_status_text(ProbeStatus s) {
    switch (s) {
    case ProbeStatus::Pass: return "pass";
    case ProbeStatus::Fail: return "fail";
    default: return "inconclusive";
    }
}

int emit_report(const SweepReport& report, bool json_out) {
    std::cout << render_report(report, json_out ? ReportFormat::Json
                                                : ReportFormat::Text);
    if (json_out) std::cout << "\n";
    return report.all_passed() ? 0 : 1;
}

int run_bernoulli(std::int64_t p, const std::string& cache_dir,
                  bool json_out) {
    const BernoulliTable table = bernoulli_table_cached(p, cache_dir);
    if (json_out) {
        nlohmann::ordered_json j;
        j["p"] = table.p;
        j["values"] = table.values;
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        std::cout << "B_" << i << " ≡ " << table.values[i] << " (mod "
                  << table.p << ")\n";
    }
    return 0;
}

int run_eval(const std::string& variant, int n, int m, std::int64_t p, int r,
             const std::string& method, bool json_out) {
    const SumSpec spec(parse_variant(variant), n, m, PrimePowerModulus(p, r));
    const Residue value = method == "brute"
                              ? eval_brute(spec, kDefaultBruteBudget)
                              : eval_conv(spec, kDefaultConvWorkBudget);
    if (json_out) {
        nlohmann::ordered_json j;
        j["variant"] = variant;
        j["n"] = n;
        j["m"] = m;
        j["p"] = p;
        j["r"] = r;
        j["method"] = method;
        j["value"] = std::to_string(value.value);
        j["modulus"] = std::to_string(value.mod);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << value.value << " (mod " << value.mod << ")\n";
    return 0;
}

int run_formula(const std::string& variant, int n, int m,
                const std::string& format) {
    const RationalCombo combo =
        known_closed_form(parse_variant(variant), n, m);
    if (format == "latex") {
        std::cout << combo_to_latex(combo) << "\n";
    } else if (format == "json") {
        std::cout << combo_to_json(combo) << "\n";
    } else {
        std::cout << combo_to_text(combo) << "\n";
    }
    return 0;
}

int run_interp(int n, bool check_conjecture, bool json_out) {
    std::vector<CoefficientPolynomial> polys;
    try {
        polys = interp_coefficients(n);
    } catch (const InterpolationMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    ProbeReport probe;
    int failures = 0;
    if (check_conjecture) {
        probe = conjecture_probe(n);
        for (const auto& entry : probe.entries) {
            if (entry.status == ProbeStatus::Fail) ++failures;
        }
    }
    if (json_out) {
        nlohmann::ordered_json j;
        j["n"] = n;
        auto polys_json = nlohmann::ordered_json::array();
        for (const auto& poly : polys) {
            nlohmann::ordered_json pj;
            pj["monomial"] = poly.monomial.indices();
            auto coeffs = nlohmann::ordered_json::array();
            for (const auto& c : poly.coeffs) {
                coeffs.push_back(rational_to_string(c));
            }
            pj["coefficients"] = std::move(coeffs);
            polys_json.push_back(std::move(pj));
        }
        j["polynomials"] = std::move(polys_json);
        if (check_conjecture) {
            auto entries = nlohmann::ordered_json::array();
            int passes = 0;
            int inconclusive = 0;
            for (const auto& entry : probe.entries) {
                nlohmann::ordered_json ej;
                ej["monomial"] = entry.monomial.indices();
                ej["m"] = entry.m;
                ej["status"] = probe_status_text(entry.status);
                ej["note"] = entry.note;
                entries.push_back(std::move(ej));
                if (entry.status == ProbeStatus::Pass) ++passes;
                if (entry.status == ProbeStatus::Inconclusive) ++inconclusive;
            }
            j["probe"] = {{"entries", std::move(entries)},
                          {"summary",
                           {{"pass", passes},
                            {"fail", failures},
                            {"inconclusive", inconclusive}}}};
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& poly : polys) {
            std::cout << monomial_label(poly.monomial) << ": "
                      << poly_text(poly.coeffs) << "\n";
        }
        if (check_conjecture) {
            int passes = 0;
            int inconclusive = 0;
            for (const auto& entry : probe.entries) {
                std::cout << monomial_label(entry.monomial)
                          << " m=" << entry.m << ": "
                          << probe_status_text(entry.status);
                if (!entry.note.empty()) std::cout << " (" << entry.note << ")";
                std::cout << "\n";
                if (entry.status == ProbeStatus::Pass) ++passes;
                if (entry.status == ProbeStatus::Inconclusive) ++inconclusive;
            }
            std::cout << "probe: pass=" << passes << ", fail=" << failures
                      << ", inconclusive=" << inconclusive << "\n";
        }
    }
    return failures > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"calculator and verifier for prime-indexed reciprocal sum "
                 "congruences"};
    app.require_subcommand(1);

    bool json_out = false;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    std::string cache_dir = default_cache_dir();
    app.add_flag("--json", json_out, "machine-readable output");
    app.add_option("--threads", threads, "worker threads for sweeps");
    app.add_option("--cache-dir", cache_dir,
                   "Bernoulli table cache directory (default: "
                   "$SUPERCONG_CACHE or ./.cache)");

    auto* bern =
        app.add_subcommand("bernoulli", "print B_i mod p for i = 0..p-3");
    std::int64_t bern_p = 0;
    bern->add_option("--p", bern_p, "prime p >= 5")->required();
    bern->fallthrough();

    auto* eval = app.add_subcommand("eval", "evaluate one sum modulo p^r");
    std::string eval_variant;
    int eval_n = 0;
    int eval_m = 0;
    int eval_r = 1;
    std::int64_t eval_p = 0;
    std::string eval_method = "conv";
    eval->add_option("variant", eval_variant, "R or S")
        ->required()
        ->check(CLI::IsMember({"R", "S"}));
    eval->add_option("--n", eval_n, "number of summation indices")->required();
    eval->add_option("--m", eval_m, "multiple of p^r to hit")->required();
    eval->add_option("--p", eval_p, "prime")->required();
    eval->add_option("--r", eval_r, "prime power exponent");
    eval->add_option("--method", eval_method, "brute or conv")
        ->check(CLI::IsMember({"brute", "conv"}));
    eval->fallthrough();

    auto* formula = app.add_subcommand(
        "formula", "closed form as a combination of Bernoulli quotients");
    std::string f_variant;
    int f_n = 0;
    int f_m = 0;
    std::string f_format;
    formula->add_option("variant", f_variant, "R or S")
        ->required()
        ->check(CLI::IsMember({"R", "S"}));
    formula->add_option("--n", f_n, "number of summation indices")->required();
    formula->add_option("--m", f_m, "multiple (1..6)")->required();
    formula->add_option("--format", f_format, "text, latex or json")
        ->check(CLI::IsMember({"text", "latex", "json"}));
    formula->fallthrough();

    auto* verify = app.add_subcommand("verify", "run a verification sweep");
    verify->require_subcommand(1);
    verify->fallthrough();

    auto* vmain = verify->add_subcommand(
        "main", "direct evaluation against the predicted congruences");
    MainGrid grid;
    std::string v_variant = "both";
    vmain->add_option("--n-min", grid.n_min, "smallest n");
    vmain->add_option("--n-max", grid.n_max, "largest n");
    vmain->add_option("--m-max", grid.m_max, "largest m");
    vmain->add_option("--p-min", grid.p_min, "smallest prime");
    vmain->add_option("--p-max", grid.p_max, "prime upper bound (exclusive)");
    vmain->add_option("--r", grid.r, "prime power exponent");
    vmain->add_option("--variant", v_variant, "R, S or both")
        ->check(CLI::IsMember({"R", "S", "both"}));
    vmain->fallthrough();

    const std::vector<std::string> lemma_names{
        "uab",  "xi",   "pgap",  "vsum", "msum",   "esum",  "fsum", "tsum",
        "sym",  "lift", "lift3", "rms1", "incexc", "ga",    "mzv-ones"};
    auto* vlemma = verify->add_subcommand(
        "lemma", "one supporting identity on its default grid");
    std::string lemma_name;
    LemmaGrid lgrid;
    vlemma->add_option("--name", lemma_name, "which identity to sweep")
        ->required()
        ->check(CLI::IsMember(lemma_names));
    vlemma->add_option("--n-max", lgrid.n_max, "largest n");
    vlemma->add_option("--m-max", lgrid.m_max, "largest m");
    vlemma->add_option("--p-min", lgrid.p_min, "smallest prime");
    vlemma->add_option("--p-max", lgrid.p_max, "prime upper bound (exclusive)");
    vlemma->add_option("--r", lgrid.r, "prime power exponent");
    vlemma->add_option("--kappa-max", lgrid.kappa_max, "largest window count");
    vlemma->add_option("--alpha-max", lgrid.alpha_max, "largest window shift");
    vlemma->add_option("--d-max", lgrid.d_max, "largest depth");
    vlemma->add_option("--w-max", lgrid.w_max, "largest weight");
    vlemma->fallthrough();

    auto* interp = app.add_subcommand(
        "interp", "interpolate coefficient polynomials in m");
    int i_n = 0;
    bool check_conj = false;
    interp->add_option("--n", i_n, "monomial weight")->required();
    interp->add_flag("--check-conjecture", check_conj,
                     "probe the sign-flip relation between the two variants");
    interp->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    VerifyOptions opts;
    opts.threads = std::max(1, threads);
    opts.cache_dir = cache_dir;

    try {
        if (bern->parsed()) return run_bernoulli(bern_p, cache_dir, json_out);
        if (eval->parsed()) {
            return run_eval(eval_variant, eval_n, eval_m, eval_p, eval_r,
                            eval_method, json_out);
        }
        if (formula->parsed()) {
            std::string format = f_format;
            if (format.empty()) format = json_out ? "json" : "text";
            return run_formula(f_variant, f_n, f_m, format);
        }
        if (vmain->parsed()) {
            if (v_variant == "R") grid.variant = Variant::R;
            if (v_variant == "S") grid.variant = Variant::S;
            return emit_report(verify_main(grid, opts), json_out);
        }
        if (vlemma->parsed()) {
            return emit_report(verify_lemma(lemma_name, lgrid, opts),
                               json_out);
        }
        if (interp->parsed()) return run_interp(i_n, check_conj, json_out);
    } catch (const UnknownLemmaName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
