#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetacycle/verifier.hpp"

#include <nlohmann/json.hpp>

using namespace thetacycle;

namespace {

struct Tally {
    long pass = 0, fail = 0, inapplicable = 0;
    std::vector<CheckOutcome> fails;
    std::vector<std::string> inapplicable_claims;
};

Tally tally(const std::vector<CheckOutcome>& outcomes) {
    Tally t;
    for (const auto& o : outcomes) {
        switch (o.verdict) {
        case Verdict::Pass: ++t.pass; break;
        case Verdict::Fail: ++t.fail; t.fails.push_back(o); break;
        case Verdict::Inapplicable:
            ++t.inapplicable;
            t.inapplicable_claims.push_back(o.claim);
            break;
        }
    }
    return t;
}

} // namespace

TEST_CASE("the registered claim sets") {
    const auto& sets = Verifier::claim_sets();
    std::vector<std::string> expected = {"prop2.2", "thmA",   "corB",
                                         "thmC",    "corD",   "lemma2.4",
                                         "bounds",  "identities", "all"};
    CHECK(sets == expected);
    Verifier v(13, FormExpr::delta());
    CHECK_THROWS(v.run("thmB"));
}

TEST_CASE("every claim about the discriminant at p = 13 passes except the printed rise list") {
    Verifier v(13, FormExpr::delta());
    Tally t = tally(v.run("all"));
    CHECK(t.pass == 190);
    CHECK(t.inapplicable == 0);
    REQUIRE(t.fail == 1);
    const CheckOutcome& f = t.fails[0];
    CHECK(f.claim == "corB.rise_by_two");
    CHECK(f.instance.find("i=2") != std::string::npos);
    CHECK(f.expected == "174");
    CHECK(f.computed == "330");
    CHECK(f.note.find("p-k+1") != std::string::npos);
}

TEST_CASE("the same single failure at p = 17, at its own first low point") {
    Verifier v(17, FormExpr::delta());
    Tally t = tally(v.run("all"));
    CHECK(t.pass == 388);
    CHECK(t.inapplicable == 0);
    REQUIRE(t.fail == 1);
    CHECK(t.fails[0].claim == "corB.rise_by_two");
    CHECK(t.fails[0].instance.find("i=6") != std::string::npos);
}

TEST_CASE("hypothesis gating at primes below the weight") {
    Verifier v(5, FormExpr::delta());
    Tally t = tally(v.run("all"));
    CHECK(t.fail == 0);
    CHECK(t.pass == 50);
    CHECK(t.inapplicable == 8);
    std::vector<std::string> expected = {
        "prop2.2.hypotheses", "thmA.hypotheses",     "corB.hypotheses",
        "thmC.hypotheses",    "corD.hypotheses",     "bounds.filtcong",
        "bounds.census.exact", "bounds.census.bounded"};
    CHECK(t.inapplicable_claims == expected);

    CHECK(tally(Verifier(7, FormExpr::delta()).run("all")).pass == 58);
    CHECK(tally(Verifier(11, FormExpr::delta()).run("all")).pass == 74);
}

TEST_CASE("per-claim-set slices are consistent with the combined run") {
    Verifier v(13, FormExpr::delta());
    std::size_t total = 0;
    for (const auto& s : Verifier::claim_sets()) {
        if (s == "all") continue;
        auto part = v.run(s);
        CHECK(!part.empty());
        total += part.size();
    }
    CHECK(total == v.run("all").size());
    CHECK(v.run("all").size() == 191);
}

TEST_CASE("scaled and unscaled power rows of the E_2 multiplication lemma") {
    // f = 1 keeps both hypotheses trivially; rows come in (scaled, unscaled)
    // pairs for 0 <= n <= n_max.
    Verifier v(5, parse_form_expr("1"));
    auto rows = v.check_e2_powers_lemma(7);
    CHECK(rows.size() == 16);
    for (const auto& o : rows) CHECK(o.verdict == Verdict::Pass);
    // scaled row at n = 1: omega-tilde(p f E_2) = k + 2 + (p-1) = 6
    bool saw_scaled = false, saw_unscaled_divisible = false;
    for (const auto& o : rows) {
        if (o.claim == "lemma2.4.scaled" && o.instance.find("n=1") != std::string::npos) {
            saw_scaled = true;
            CHECK(o.computed == "6");
        }
        if (o.claim == "lemma2.4.unscaled" && o.instance.find("n=5") != std::string::npos) {
            saw_unscaled_divisible = true;
            CHECK(o.computed == "30");   // p | n: no extra (p+1)(p-1) bump
        }
    }
    CHECK(saw_scaled);
    CHECK(saw_unscaled_divisible);
}

TEST_CASE("the lemma is gated by its own hypotheses, not the cycle ones") {
    // E4 at p = 5 reduces to a constant: omega_p(f) = 0 != 4, so every row
    // collapses to a single inapplicability marker.
    Verifier v(5, FormExpr::eisenstein4());
    auto rows = v.check_e2_powers_lemma();
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].verdict == Verdict::Inapplicable);
    CHECK(rows[0].claim == "lemma2.4.hypotheses");
}

TEST_CASE("identities hold at a prime where the form is non-ordinary") {
    Tally t = tally(Verifier(7, FormExpr::delta()).run("identities"));
    CHECK(t.fail == 0);
    CHECK(t.inapplicable == 0);
    CHECK(t.pass > 20);
}

TEST_CASE("outcome lines are stable JSON") {
    CheckOutcome o;
    o.claim = "thmA.weight";
    o.instance = "form=Delta p=13 k=12 i=2";
    o.statement = "omega(theta^i f) == 172";
    o.expected = "172";
    o.computed = "172";
    o.verdict = Verdict::Pass;
    CHECK(outcome_json_line(o) ==
          R"({"claim":"thmA.weight","instance":"form=Delta p=13 k=12 i=2",)"
          R"("statement":"omega(theta^i f) == 172","expected":"172",)"
          R"("computed":"172","verdict":"pass"})");
    o.verdict = Verdict::Fail;
    o.note = "documented deviation";
    nlohmann::json j = nlohmann::json::parse(outcome_json_line(o));
    CHECK(j["verdict"] == "fail");
    CHECK(j["note"] == "documented deviation");
    CHECK(j["claim"] == "thmA.weight");
}

TEST_CASE("summaries count verdicts") {
    Verifier v(13, FormExpr::delta());
    auto rows = v.run("thmA");
    CheckSummary s = summarize("thmA", rows);
    CHECK(s.claim_set == "thmA");
    CHECK(s.pass == (long)rows.size());
    CHECK(s.fail == 0);
    CHECK(s.inapplicable == 0);
}

TEST_CASE("the verifier validates its prime") {
    CHECK_THROWS(Verifier(4, FormExpr::delta()));
    CHECK_THROWS(Verifier(2, FormExpr::delta()));
}
