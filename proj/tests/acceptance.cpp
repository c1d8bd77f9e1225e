// Acceptance runner: one line per criterion, nonzero exit if any fails.
// The large-prime run (criterion 10) only executes under --slow.

#include "thetacycle/filtration.hpp"
#include "thetacycle/verifier.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace thetacycle;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::vector<std::string>& details = {}) {
    std::printf("[criterion %d] %s — %s\n", criterion, ok ? "PASS" : "FAIL",
                what.c_str());
    for (const auto& d : details) std::printf("    %s\n", d.c_str());
    if (!ok) ++failures;
}

struct Counts {
    long pass = 0, fail = 0, inapplicable = 0;
    std::vector<std::string> fail_lines;
};

Counts count(const std::vector<CheckOutcome>& rows) {
    Counts c;
    for (const auto& o : rows) {
        if (o.verdict == Verdict::Pass) ++c.pass;
        else if (o.verdict == Verdict::Fail) {
            ++c.fail;
            c.fail_lines.push_back(o.claim + " [" + o.instance + "] expected "
                                   + o.expected + " got " + o.computed);
        } else ++c.inapplicable;
    }
    return c;
}

std::string show(const Counts& c) {
    return std::to_string(c.pass) + " pass, " + std::to_string(c.fail)
           + " fail, " + std::to_string(c.inapplicable) + " inapplicable";
}

// ---- criterion 1: the deep descent at the end of the mod-169 cycle ----

void criterion_1() {
    CycleReport r = compute_cycle(FormExpr::delta(), Modulus(13, 2));
    long got[3] = {0, 0, 0};
    for (const auto& rec : r.records)
        if (rec.i >= 133 && rec.i <= 135) got[rec.i - 133] = rec.weight_filt;
    bool ok = got[0] == 434 && got[1] == 280 && got[2] == 126;
    report(1, ok, "omega_169(theta^i Delta) for i = 133, 134, 135 equals 434, 280, 126",
           {"computed: " + std::to_string(got[0]) + ", " + std::to_string(got[1])
            + ", " + std::to_string(got[2])});
}

// ---- criterion 2: weight and factor values over the first period ----

void criterion_2() {
    struct Instance { std::uint64_t p; const char* form; };
    const Instance instances[] = {
        {13, "Delta"}, {17, "Delta"}, {19, "Delta"}, {19, "E4*Delta"}};
    bool ok = true;
    std::vector<std::string> details;
    for (const auto& ins : instances) {
        Verifier v(ins.p, parse_form_expr(ins.form));
        Counts c = count(v.check_theorem_A());
        bool here = c.fail == 0 && c.inapplicable == 0 && c.pass > 0;
        ok = ok && here;
        details.push_back(std::string(ins.form) + " at p=" + std::to_string(ins.p)
                          + ": " + show(c));
        for (const auto& l : c.fail_lines) details.push_back("  " + l);
    }
    report(2, ok, "weight and factor filtrations match the five-case table for 0 <= i <= p",
           details);
}

// ---- criterion 3: mod-p cycles, with the hypothesis and ordinarity gates ----

void criterion_3() {
    bool ok = true;
    std::vector<std::string> details;
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull}) {
        Verifier v(p, FormExpr::delta());
        Counts c = count(v.check_prop_jochnowitz());
        bool applicable = p >= 13;
        bool here;
        if (applicable)
            here = c.fail == 0 && c.inapplicable == 0 && c.pass > 0;
        else
            here = c.fail == 0 && c.inapplicable == 1 && c.pass == 0;
        OrdinarityCriteria crit = ordinarity_criteria(FormExpr::delta(), p);
        bool agree = crit.up_vanishing == crit.theta_fixed_point;
        here = here && agree;
        ok = ok && here;
        details.push_back("p=" + std::to_string(p) + ": " + show(c)
                          + (applicable ? "" : " (hypotheses correctly rejected)")
                          + ", U_p and theta-fixed-point criteria "
                          + (agree ? "agree" : "DISAGREE")
                          + (crit.up_vanishing ? " (non-ordinary)" : " (ordinary)"));
        for (const auto& l : c.fail_lines) details.push_back("  " + l);
    }
    report(3, ok, "mod-p cycle of Delta matches the four-case formula where its hypotheses hold",
           details);
}

// ---- criterion 4: the band structure across the extended cycle at p = 17 ----

void criterion_4() {
    Verifier v(17, FormExpr::delta());
    Counts c = count(v.check_theorem_C());
    bool ok = c.fail == 0 && c.inapplicable == 0 && c.pass > 0;
    std::vector<std::string> details = {"Delta at p=17, all bands 1 <= n < 17: " + show(c)};
    for (const auto& l : c.fail_lines) details.push_back("  " + l);
    report(4, ok, "band values and bounds hold across np <= i <= np + p - k + 1", details);
}

// ---- criterion 5: low-point sets and their classifications at p = 17 ----

void criterion_5() {
    Verifier v(17, FormExpr::delta());
    auto corb = v.check_corollary_B();
    auto cord = v.check_corollary_D();
    bool low_rows = true;
    long erratum_fails = 0, other_fails = 0;
    for (const auto& o : corb) {
        if (o.claim == "corB.rise_by_two") {
            if (o.verdict == Verdict::Fail) {
                if (o.instance.find("i=6") != std::string::npos) ++erratum_fails;
                else ++other_fails;
            }
            continue;
        }
        low_rows = low_rows && o.verdict == Verdict::Pass;
    }
    Counts cd = count(cord);
    bool ok = low_rows && other_fails == 0 && cd.fail == 0 && cd.inapplicable == 0;
    std::vector<std::string> details = {
        "low points of 0 < i <= p are exactly {p-k+1, p} = {6, 17}",
        "classification rows: " + show(cd),
        "rise-by-two: the printed exclusion list fails once, at i = p-k+1 = 6 "
        "(rise there is 2 + p(p-1); documented deviation, surfaced as a fail "
        "with an explanatory note)"};
    for (const auto& l : cd.fail_lines) details.push_back("  " + l);
    report(5, ok, "low points land exactly where the classification says", details);
}

// ---- criterion 6: congruence identities behind the mod-p^2 engine ----

void criterion_6() {
    bool ok = true;
    std::vector<std::string> details;
    for (const char* form : {"Delta", "E4*Delta"}) {
        for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
            Verifier v(p, parse_form_expr(form));
            Counts c = count(v.check_identities());
            bool here = c.fail == 0 && c.inapplicable == 0 && c.pass > 0;
            ok = ok && here;
            if (!here) {
                details.push_back(std::string(form) + " at p=" + std::to_string(p)
                                  + ": " + show(c));
                for (const auto& l : c.fail_lines) details.push_back("  " + l);
            }
        }
    }
    if (details.empty())
        details.push_back("theta-power expansion (i <= 10), holomorphic E_2 "
                          "representative (200 coefficients), E_2 power congruences "
                          "(n <= 2p), theta periodicity");
    report(6, ok, "all engine congruence identities hold for Delta and E4*Delta at p <= 13",
           details);
}

// ---- criterion 7: the E_2 multiplication lemma ----

void criterion_7() {
    bool ok = true;
    std::vector<std::string> details;
    for (const char* form : {"1", "Delta"}) {
        for (std::uint64_t p : {5ull, 7ull, 13ull}) {
            Verifier v(p, parse_form_expr(form));
            Counts c = count(v.check_e2_powers_lemma());
            bool here = c.fail == 0 && c.inapplicable == 0 && c.pass > 0;
            ok = ok && here;
            details.push_back(std::string("f=") + form + " p=" + std::to_string(p)
                              + ": " + show(c));
            for (const auto& l : c.fail_lines) details.push_back("  " + l);
        }
    }
    report(7, ok, "factor filtrations of f E_2^n and p f E_2^n follow the two-branch formula",
           details);
}

// ---- criterion 8: global invariants of the full extended cycle at p = 13 ----

void criterion_8() {
    Verifier v(13, FormExpr::delta());
    Counts c = count(v.check_bounds());
    bool periodicity = false;
    for (const auto& o : v.check_identities())
        if (o.claim == "identity.theta_periodicity")
            periodicity = o.verdict == Verdict::Pass;
    bool ok = c.fail == 0 && c.inapplicable == 0 && periodicity;
    std::vector<std::string> details = {
        "congruence class, upper bounds, weight-from-factor consistency, census: " + show(c),
        std::string("theta^(i + p(p-1)) f == theta^i f mod p^2 for sampled i >= 2: ")
            + (periodicity ? "holds" : "FAILS")};
    for (const auto& l : c.fail_lines) details.push_back("  " + l);
    report(8, ok, "every structural invariant holds over 0 <= i <= p(p-1) + 4 at p = 13",
           details);
}

// ---- criterion 9: the descent against an exhaustive membership oracle ----

// All coordinate vectors of all candidate weights on the given ladder: count
// exact matches of coord-combination * E^e against s.  Returns the least
// matching weight (-1 if none) and enforces at most one match per weight.
long brute_force_min_weight(FiltrationContext& ctx, SeriesToolkit& tk, unsigned m_eff,
                            const QSeries& s, long W, long step, std::size_t P,
                            bool& unique_ok) {
    const Modulus& mod = s.modulus();
    long found = -1;
    for (long cand = ((W % step) + step) % step; cand <= W; cand += step) {
        long dc = dim_modular_forms(cand);
        if (dc == 0) continue;
        QSeries target = s * tk.inv_epm1_power((W - cand) / (long)(mod.p - 1));
        std::vector<QSeries> rows;
        for (long j = 0; j < dc; ++j) {
            std::vector<std::uint64_t> unit((std::size_t)dc, 0);
            unit[(std::size_t)j] = 1;
            rows.push_back(ctx.form_from_coords(cand, unit, P, m_eff));
        }
        long matches = 0;
        std::vector<std::uint64_t> vec((std::size_t)dc, 0);
        while (true) {
            bool agree = true;
            for (std::size_t c = 0; c < P && agree; ++c) {
                std::uint64_t acc = 0;
                for (long j = 0; j < dc; ++j)
                    acc = add_mod(acc, mul_mod(vec[(std::size_t)j], rows[(std::size_t)j][c], mod), mod);
                agree = acc == target[c];
            }
            if (agree) ++matches;
            std::size_t pos = 0;
            while (pos < vec.size() && ++vec[pos] == mod.pm) vec[pos++] = 0;
            if (pos == vec.size()) break;
        }
        if (matches > 1) unique_ok = false;
        if (matches >= 1 && found < 0) found = cand;
    }
    return found;
}

void criterion_9() {
    std::mt19937_64 rng(4242);
    bool ok = true;
    std::vector<std::string> details;
    long tested = 0, mismatches = 0;
    for (unsigned m = 1; m <= 2; ++m) {
        Modulus mod(5, m);
        FiltrationContext ctx(mod);
        SeriesToolkit& tk = ctx.toolkit(m);
        long weight_step = (long)(mod.p - 1) * (m == 2 ? (long)mod.p : 1);
        for (int t = 0; t < 50; ++t) {
            long w = 2 * (long)(2 + rng() % 11);   // 4 .. 24
            if (w % 12 == 2) w += 2;
            long max_rungs = (24 - w) / weight_step;
            long rungs = max_rungs > 0 ? (long)(rng() % (std::uint64_t)(max_rungs + 1)) : 0;
            long W = w + rungs * weight_step;
            std::size_t P = ctx.test_precision(W) + 2;
            tk.ensure_precision(P + 4);
            long d = dim_modular_forms(w);
            std::vector<std::uint64_t> coords((std::size_t)d);
            for (auto& c : coords) c = rng() % mod.pm;
            QSeries g = ctx.form_from_coords(w, coords, P, m);
            if (g.is_zero()) continue;
            QSeries s = g * tk.epm1_power(rungs * (weight_step / (long)(mod.p - 1)));
            s.set_weight_tag(W);
            ++tested;

            // the engine strips p^v and measures over p^(m-v); so must the
            // oracle, on the collapsed ladder of the reduced modulus
            unsigned v = p_valuation(s);
            unsigned m_eff = m - v;
            SeriesToolkit& etk = ctx.toolkit(m_eff);
            etk.ensure_precision(P + 4);
            QSeries se = v ? strip_p_power(s, v) : s;
            long eff_step = (long)(mod.p - 1) * (m_eff == 2 ? (long)mod.p : 1);

            bool unique_ok = true;
            long brute_weight = brute_force_min_weight(ctx, etk, m_eff, se, W, eff_step, P, unique_ok);
            long brute_factor = brute_force_min_weight(ctx, etk, m_eff, se, W, (long)(mod.p - 1), P, unique_ok);
            auto [wf, ff] = ctx.filtration_pair(s);
            bool here = unique_ok && !wf.zero && brute_weight == wf.value
                        && brute_factor == ff.value
                        && wf.p_divided == v && ff.p_divided == v
                        && weight_from_factor(ff.value, W, mod.reduced(v)) == wf.value;
            if (!here) {
                ++mismatches;
                details.push_back("m=" + std::to_string(m) + " tag " + std::to_string(W)
                                  + ": descent (" + std::to_string(wf.value) + ", "
                                  + std::to_string(ff.value) + ") vs oracle ("
                                  + std::to_string(brute_weight) + ", "
                                  + std::to_string(brute_factor) + ")"
                                  + (unique_ok ? "" : " [non-unique witness]"));
            }
            ok = ok && here;
        }
    }
    details.push_back("tested " + std::to_string(tested) + " randomized series, "
                      + std::to_string(mismatches) + " disagreements");
    report(9, ok, "weight and factor descent agree with exhaustive enumeration at p = 5",
           details);
}

// ---- criterion 10: the full extended cycle at a desk-scale large prime ----

void criterion_10() {
    Verifier v(59, FormExpr::delta());
    Counts a = count(v.check_theorem_A());
    Counts c = count(v.check_theorem_C());
    Counts b = count(v.check_bounds());
    std::string census;
    for (const auto& o : v.check_bounds())
        if (o.claim.rfind("bounds.census", 0) == 0)
            census += (census.empty() ? "" : "; ") + o.claim + " computed "
                      + o.computed + " needs " + o.expected;
    bool ok = a.fail == 0 && a.inapplicable == 0 && c.fail == 0
              && c.inapplicable == 0 && b.fail == 0 && b.inapplicable == 0;
    std::vector<std::string> details = {
        "first period: " + show(a), "bands: " + show(c), "invariants: " + show(b),
        census};
    for (const auto& l : a.fail_lines) details.push_back("  " + l);
    for (const auto& l : c.fail_lines) details.push_back("  " + l);
    for (const auto& l : b.fail_lines) details.push_back("  " + l);
    report(10, ok, "Delta at p = 59: exact rows, bounds, and census over the full cycle",
           details);
}

} // namespace

int main(int argc, char** argv) {
    bool slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--slow") slow = true;

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (slow)
        criterion_10();
    else
        std::printf("[criterion 10] SKIP — large-prime run; enable with --slow\n");
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
