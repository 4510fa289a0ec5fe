#include <doctest.h>

#include <algorithm>
#include <string>

#include <json.hpp>

#include "supercong/bernoulli.hpp"
#include "supercong/verifier.hpp"

using namespace supercong;

namespace {

std::string param(const VerificationRecord& rec, const std::string& key) {
    for (const auto& [k, v] : rec.params) {
        if (k == key) return v;
    }
    return {};
}

std::size_t count_status(const SweepReport& report, CheckStatus status) {
    return static_cast<std::size_t>(
        std::count_if(report.records.begin(), report.records.end(),
                      [&](const VerificationRecord& r) {
                          return r.status == status;
                      }));
}

} // namespace

TEST_SUITE("verifier") {

TEST_CASE("small main sweep partitions its grid") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 3;
    grid.m_max = 1;
    grid.p_min = 5;
    grid.p_max = 20;
    grid.r = 1;
    const SweepReport report = verify_main(grid);

    // 6 primes x 2 n x 1 m x 2 variants, skips included.
    CHECK(report.records.size() == 24);
    const Summary s = report.summary();
    CHECK(s.passed == 22);
    CHECK(s.failed == 0);
    CHECK(s.skipped == 2);
    CHECK(s.total() == 24);
    CHECK(report.all_passed());

    // The two skips are the n = 3 cells at p = 5 (below the n+3 floor).
    for (const auto& rec : report.records) {
        if (rec.status == CheckStatus::Skipped) {
            CHECK(param(rec, "n") == "3");
            CHECK(param(rec, "p") == "5");
            CHECK(rec.skip_reason == "precondition");
            CHECK(rec.lhs.empty());
            CHECK(rec.rhs.empty());
        } else {
            CHECK(rec.lhs == rec.rhs);
            CHECK_FALSE(rec.lhs.empty());
        }
    }
}

TEST_CASE("records come back sorted by check then p, n, m") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 3;
    grid.m_max = 2;
    grid.p_min = 7;
    grid.p_max = 14;
    const SweepReport report = verify_main(grid);
    CHECK(report.records.size() == 24);

    const auto mid = report.records.size() / 2;
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        CHECK(report.records[i].check_id ==
              (i < mid ? "main.R" : "main.S"));
    }
    for (std::size_t i = 1; i < report.records.size(); ++i) {
        const auto& a = report.records[i - 1];
        const auto& b = report.records[i];
        if (a.check_id != b.check_id) continue;
        const long pa = std::stol(param(a, "p"));
        const long pb = std::stol(param(b, "p"));
        CHECK(pa <= pb);
        if (pa == pb) {
            const long na = std::stol(param(a, "n"));
            const long nb = std::stol(param(b, "n"));
            CHECK(na <= nb);
            if (na == nb) {
                CHECK(std::stol(param(a, "m")) < std::stol(param(b, "m")));
            }
        }
    }
}

TEST_CASE("multiples of p are skipped, not evaluated") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 2;
    grid.m_max = 7;
    grid.p_min = 7;
    grid.p_max = 8;
    grid.variant = Variant::R;
    const SweepReport report = verify_main(grid);
    CHECK(report.records.size() == 7);
    CHECK(count_status(report, CheckStatus::Pass) == 6);
    CHECK(count_status(report, CheckStatus::Skipped) == 1);
    for (const auto& rec : report.records) {
        if (param(rec, "m") == "7") {
            CHECK(rec.status == CheckStatus::Skipped);
            CHECK(rec.skip_reason == "precondition");
        } else {
            CHECK(rec.status == CheckStatus::Pass);
        }
    }
}

TEST_CASE("skip taxonomy on the lifted bounded sweep") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 4;
    grid.m_max = 4;
    grid.p_min = 11;
    grid.p_max = 12;
    grid.r = 2;
    grid.variant = Variant::S;
    const SweepReport report = verify_main(grid);
    CHECK(report.records.size() == 12);
    const Summary s = report.summary();
    CHECK(s.passed == 6);
    CHECK(s.failed == 0);
    CHECK(s.skipped == 6);
    for (const auto& rec : report.records) {
        const int n = std::stoi(param(rec, "n"));
        const int m = std::stoi(param(rec, "m"));
        CHECK(rec.status == (m > n - 1 ? CheckStatus::Skipped
                                       : CheckStatus::Pass));
        CHECK(rec.modulus == "121");
    }
}

TEST_CASE("third power sweep for the unbounded variant") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 3;
    grid.m_max = 2;
    grid.p_min = 11;
    grid.p_max = 14;
    grid.r = 3;
    grid.variant = Variant::R;
    const SweepReport report = verify_main(grid);
    CHECK(report.records.size() == 8);
    CHECK(report.summary().passed == 8);
    CHECK(report.summary().failed == 0);
}

TEST_CASE("reports render identically whatever the thread count") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 4;
    grid.m_max = 2;
    grid.p_min = 5;
    grid.p_max = 20;
    VerifyOptions serial;
    serial.threads = 1;
    VerifyOptions pooled;
    pooled.threads = 8;
    const SweepReport a = verify_main(grid, serial);
    const SweepReport b = verify_main(grid, pooled);
    CHECK(render_report(a, ReportFormat::Text) ==
          render_report(b, ReportFormat::Text));
    CHECK(render_report(a, ReportFormat::Json) ==
          render_report(b, ReportFormat::Json));
}

TEST_CASE("exact chain identity sweep") {
    const SweepReport report = verify_lemma("ga");
    CHECK(report.records.size() == 84);
    CHECK(report.summary().passed == 84);
    for (const auto& rec : report.records) {
        CHECK(rec.check_id == "lemma.ga");
        CHECK(rec.modulus == "0");
        CHECK_FALSE(param(rec, "kappa").empty());
        CHECK_FALSE(param(rec, "g").empty());
        CHECK_FALSE(param(rec, "i").empty());
    }
}

TEST_CASE("exact pinned-chain sweep stays rational") {
    const SweepReport report = verify_lemma("tsum");
    CHECK(report.records.size() == 12);
    CHECK(report.summary().passed == 12);
    CHECK(report.summary().failed == 0);
    for (const auto& rec : report.records) {
        CHECK(rec.modulus == "0");
    }
}

TEST_CASE("harmonic-tail sweep passes on its default grid") {
    const SweepReport report = verify_lemma("mzv-ones");
    CHECK(report.summary().failed == 0);
    CHECK(report.summary().passed > 0);
    for (const auto& rec : report.records) {
        if (rec.status == CheckStatus::Skipped) {
            CHECK(rec.skip_reason == "precondition");
        }
    }
}

TEST_CASE("window sweep honours grid overrides") {
    LemmaGrid grid;
    grid.n_max = 3;
    grid.p_max = 14;
    grid.alpha_max = 1;
    const SweepReport report = verify_lemma("xi", grid);
    CHECK(report.summary().failed == 0);
    CHECK(report.summary().passed > 0);
    for (const auto& rec : report.records) {
        CHECK(rec.check_id == "cor.xi");
        CHECK(std::stol(param(rec, "p")) < 14);
        CHECK(std::stoi(param(rec, "n")) <= 3);
        CHECK(std::stoi(param(rec, "alpha")) <= 1);
    }
}

TEST_CASE("unknown sweep names are rejected") {
    CHECK_THROWS_AS(verify_lemma("bogus"), UnknownLemmaName);
}

TEST_CASE("rendering an empty report") {
    SweepReport report;
    const std::string text = render_report(report, ReportFormat::Text);
    CHECK(text.find("pass=0, fail=0, skipped=0 (0 checks)") !=
          std::string::npos);
    const auto j =
        nlohmann::ordered_json::parse(render_report(report,
                                                    ReportFormat::Json));
    CHECK(j["records"].empty());
    CHECK(j["summary"]["pass"] == 0);
}

TEST_CASE("json rendering round-trips and keeps its schema") {
    MainGrid grid;
    grid.n_min = 2;
    grid.n_max = 3;
    grid.m_max = 1;
    grid.p_min = 5;
    grid.p_max = 20;
    const SweepReport report = verify_main(grid);
    const std::string rendered = render_report(report, ReportFormat::Json);
    const auto j = nlohmann::ordered_json::parse(rendered);
    CHECK(j.dump(2) == rendered);

    CHECK(j["config"]["p_min"] == 5);
    CHECK(j["records"].size() == 24);
    const auto& first = j["records"][0];
    CHECK(first["check"] == "main.R");
    CHECK(first["p"].is_number_integer());
    CHECK(first["lhs"].is_string());
    CHECK(first["modulus"] == "5");
    CHECK(first["status"] == "pass");

    bool saw_skip = false;
    for (const auto& rec : j["records"]) {
        if (rec["status"] == "skipped") {
            saw_skip = true;
            CHECK(rec["reason"] == "precondition");
            CHECK_FALSE(rec.contains("lhs"));
            CHECK_FALSE(rec.contains("rhs"));
        }
    }
    CHECK(saw_skip);
}

TEST_CASE("baseline congruence against tabulated numerators") {
    for (std::int64_t p : primes_in_range(5, 200)) {
        const BernoulliTable tab = bernoulli_table(p);
        const Residue lhs =
            eval_conv(SumSpec(Variant::R, 3, 1, PrimePowerModulus(p, 1)));
        const Residue rhs =
            mod_reduce(BigInt(-2), p) *
            bernoulli_mod(static_cast<int>(p - 3), tab);
        CAPTURE(p);
        CHECK(lhs == rhs);
        if (p == 7) {
            CHECK(lhs == Residue{1, 7});
            CHECK(rhs == Residue{1, 7});
        }
    }
}

} // TEST_SUITE
