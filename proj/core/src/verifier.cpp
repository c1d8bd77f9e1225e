#include "thetacycle/verifier.hpp"

#include "thetacycle/serre.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace thetacycle {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

std::string outcome_json_line(const CheckOutcome& o) {
    nlohmann::ordered_json j{
        {"claim", o.claim},         {"instance", o.instance},
        {"statement", o.statement}, {"expected", o.expected},
        {"computed", o.computed},   {"verdict", to_string(o.verdict)},
    };
    if (!o.note.empty()) j["note"] = o.note;
    return j.dump();
}

CheckSummary summarize(const std::string& claim_set,
                       const std::vector<CheckOutcome>& outcomes) {
    CheckSummary s;
    s.claim_set = claim_set;
    for (const auto& o : outcomes) {
        switch (o.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::Inapplicable: ++s.inapplicable; break;
        }
    }
    return s;
}

namespace {

std::string num(long v) { return std::to_string(v); }

CheckOutcome value_row(std::string claim, std::string instance,
                       std::string statement, long expected, long computed,
                       std::string note = {}) {
    CheckOutcome o;
    o.verdict = computed == expected ? Verdict::Pass : Verdict::Fail;
    o.expected = num(expected);
    o.computed = num(computed);
    o.claim = std::move(claim);
    o.instance = std::move(instance);
    o.statement = std::move(statement);
    o.note = std::move(note);
    return o;
}

CheckOutcome bound_row(std::string claim, std::string instance,
                       std::string statement, long bound, long computed,
                       std::string note = {}) {
    CheckOutcome o;
    o.verdict = computed <= bound ? Verdict::Pass : Verdict::Fail;
    o.expected = "<= " + num(bound);
    o.computed = num(computed);
    o.claim = std::move(claim);
    o.instance = std::move(instance);
    o.statement = std::move(statement);
    o.note = std::move(note);
    return o;
}

CheckOutcome fact_row(std::string claim, std::string instance,
                      std::string statement, bool ok, std::string expected,
                      std::string computed, std::string note = {}) {
    CheckOutcome o;
    o.verdict = ok ? Verdict::Pass : Verdict::Fail;
    o.expected = std::move(expected);
    o.computed = std::move(computed);
    o.claim = std::move(claim);
    o.instance = std::move(instance);
    o.statement = std::move(statement);
    o.note = std::move(note);
    return o;
}

// The theorems presuppose theta^i f != 0 mod p; a vanishing or p-divisible
// record would make the compared value meaningless, so fail loudly.
void flag_degenerate(const FiltrationRecord& r, CheckOutcome& o) {
    if (r.zero) {
        o.computed = "zero series";
        o.verdict = Verdict::Fail;
        o.note = "theta^i f == 0";
    } else if (r.p_divided) {
        o.verdict = Verdict::Fail;
        o.note = "p^" + num(r.p_divided) + " | theta^i f";
    }
}

} // namespace

Verifier::Verifier(std::uint64_t p, FormExpr form, std::size_t guard)
    : p_(p), form_(std::move(form)), guard_(guard) {
    form_.validate();
    form_str_ = form_.to_string();
    k_ = form_.weight();
    Modulus probe(p_, 1);   // validates the prime
    (void)probe;
}

std::string Verifier::tag(long i, long n) const {
    std::string s = "form=" + form_str_ + " p=" + num(static_cast<long>(p_)) +
                    " k=" + num(k_);
    if (n >= 0) s += " n=" + num(n);
    if (i >= 0) s += " i=" + num(i);
    return s;
}

const Verifier::Hypotheses& Verifier::hypotheses() {
    if (hyp_) return *hyp_;
    Hypotheses h;
    long lp = static_cast<long>(p_);
    h.weight_in_range = k_ > 0 && k_ < lp;
    Modulus mod1(p_, 1);
    FiltrationContext ctx(mod1, guard_);
    SeriesToolkit tk(mod1, 32);
    QSeries f1 = tk.form_series(form_, ctx.test_precision(k_));
    if (f1.is_zero()) {
        h.zero_mod_p = true;
    } else {
        FiltrationOutcome wf = ctx.weight_filtration(f1);
        h.omega_p = wf.value;
        h.filtration_matches = wf.value == k_;
        h.ordinary = is_ordinary(form_, p_);
    }
    hyp_ = h;
    return *hyp_;
}

std::string Verifier::hypothesis_note() const {
    const Hypotheses& h = *hyp_;
    if (h.zero_mod_p) return "form vanishes mod p";
    std::string s;
    if (!h.weight_in_range)
        s = "weight k=" + num(k_) + " not in 0 < k < p";
    if (!h.filtration_matches) {
        if (!s.empty()) s += "; ";
        s += "omega_p(f) = " + num(h.omega_p) + " != k = " + num(k_);
    }
    return s;
}

CheckOutcome Verifier::inapplicable(std::string claim,
                                    std::string statement) const {
    CheckOutcome o;
    o.claim = std::move(claim);
    o.instance = tag();
    o.statement = std::move(statement);
    o.expected = "hypotheses: 0 < k < p and omega_p(f) = k";
    o.computed = "unsatisfied";
    o.verdict = Verdict::Inapplicable;
    o.note = hypothesis_note();
    return o;
}

const CycleReport& Verifier::cycle_report(unsigned m, long i_max) {
    if (m != 1 && m != 2)
        throw std::domain_error("cycle_report: m must be 1 or 2");
    auto& slot = m == 1 ? rep1_ : rep2_;
    if (!slot || slot->i_max < i_max) {
        CycleOptions opts;
        opts.i_max = i_max;
        opts.guard = guard_;
        opts.theorem_mode = hypotheses().satisfied();
        slot = compute_cycle(form_, Modulus(p_, m), opts);
    }
    return *slot;
}

std::vector<CheckOutcome> Verifier::check_prop_jochnowitz() {
    std::vector<CheckOutcome> out;
    const Hypotheses& h = hypotheses();
    if (!h.satisfied()) {
        out.push_back(inapplicable(
            "prop2.2.hypotheses",
            "omega_p(theta^i f) follows the four-case mod-p formula"));
        return out;
    }
    long lp = static_cast<long>(p_), k = k_;
    const CycleReport& rep = cycle_report(1, lp);
    const auto& R = rep.records;
    bool ord = rep.ordinary;

    OrdinarityCriteria crit = ordinarity_criteria(form_, p_);
    out.push_back(fact_row(
        "prop2.2.ordinarity_criteria", tag(),
        "a(np) == 0 mod p for all n iff theta^(p-1) f == f mod p",
        crit.up_vanishing == crit.theta_fixed_point,
        crit.up_vanishing ? "U_p-congruence" : "no U_p-congruence",
        crit.theta_fixed_point ? "U_p-congruence" : "no U_p-congruence"));

    for (long i = 0; i < lp; ++i) {
        const FiltrationRecord& r = R[static_cast<std::size_t>(i)];
        long expect;
        const char* branch;
        if (i < lp - k + 1) {
            expect = k + i * (lp + 1);
            branch = "before_low";
        } else if (ord) {
            expect = k + i * (lp + 1) - (lp - k + 1) * (lp - 1);
            branch = "tail_ordinary";
        } else if (i < lp - 1) {
            expect = k + i * (lp + 1) - (lp - k + 2) * (lp - 1);
            branch = "tail_nonordinary";
        } else {
            expect = k;
            branch = "return_nonordinary";
        }
        CheckOutcome o =
            value_row(std::string("prop2.2.") + branch, tag(i),
                      "omega_p(theta^i f) equals the stated value", expect,
                      r.weight_filt);
        flag_degenerate(r, o);
        out.push_back(std::move(o));
    }
    // theta^i f == theta^(i-p+1) f mod p, sampled at i = p, p + 1
    {
        constexpr std::size_t N = 64;
        Modulus mod1(p_, 1);
        SeriesToolkit tk(mod1, N);
        QSeries cur = tk.form_series(form_, N);
        std::vector<QSeries> powers;
        powers.push_back(cur);
        for (long i = 1; i <= lp + 1; ++i) {
            cur = theta_apply(cur);
            powers.push_back(cur);
        }
        for (long i = lp; i <= lp + 1; ++i) {
            bool ok = agree_to(powers[static_cast<std::size_t>(i)],
                               powers[static_cast<std::size_t>(i - lp + 1)], N);
            out.push_back(fact_row(
                "prop2.2.periodicity", tag(i),
                "theta^i f == theta^(i-p+1) f mod p", ok,
                "equal to " + std::to_string(N) + " coefficients",
                ok ? "equal" : "differ"));
        }
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_theorem_A() {
    std::vector<CheckOutcome> out;
    const Hypotheses& h = hypotheses();
    if (!h.satisfied()) {
        out.push_back(inapplicable(
            "thmA.hypotheses",
            "filtrations of theta^i f mod p^2 for 0 <= i <= p"));
        return out;
    }
    long lp = static_cast<long>(p_), k = k_;
    const CycleReport& rep = cycle_report(2, lp);
    const auto& R = rep.records;
    bool ord = rep.ordinary;
    for (long i = 0; i <= lp; ++i) {
        const FiltrationRecord& r = R[static_cast<std::size_t>(i)];
        long expect;
        const char* branch;
        if (i == 0) {
            expect = k;
            branch = "start";
        } else if (i < lp - k + 1) {
            expect = k + 2 * i + 2 * lp * (lp - 1);
            branch = "before_low";
        } else if (i == lp - k + 1) {
            expect = k + 2 * i + lp * (lp - 1);
            branch = "first_low";
        } else if (i < lp) {
            expect = k + 2 * i + 2 * lp * (lp - 1);
            branch = "middle";
        } else {
            expect = k + 2 * i + lp * (lp - 1);
            branch = "second_low";
        }
        CheckOutcome o =
            value_row(std::string("thmA.weight.") + branch, tag(i),
                      "omega_{p^2}(theta^i f) equals the stated value", expect,
                      r.weight_filt);
        flag_degenerate(r, o);
        out.push_back(std::move(o));
    }
    for (long i = 1; i <= lp; ++i) {
        const FiltrationRecord& r = R[static_cast<std::size_t>(i)];
        long expect;
        const char* branch;
        std::string note;
        if (i < lp - k + 1) {
            expect = k + 2 * i + (i + lp + 1) * (lp - 1);
            branch = "before_low";
        } else if (i == lp - k + 1) {
            expect = k + i * (lp + 1);
            branch = "first_low";
        } else if (i < lp) {
            expect = k + 2 * i + (i + k - (ord ? 0 : 1)) * (lp - 1);
            branch = "middle";
            note = ord ? "ordinary branch" : "non-ordinary branch";
        } else {
            expect = k + 2 * lp + lp * (lp - 1);
            branch = "second_low";
        }
        CheckOutcome o = value_row(
            std::string("thmA.factor.") + branch, tag(i),
            "factor filtration of theta^i f equals the stated value", expect,
            r.factor_filt, std::move(note));
        flag_degenerate(r, o);
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_corollary_B() {
    std::vector<CheckOutcome> out;
    const Hypotheses& h = hypotheses();
    if (!h.satisfied()) {
        out.push_back(inapplicable(
            "corB.hypotheses",
            "low-point positions and rises of the mod p^2 cycle"));
        return out;
    }
    long lp = static_cast<long>(p_), k = k_;
    const CycleReport& rep = cycle_report(2, lp + 1);
    const auto& R = rep.records;
    auto cls = [&](long i) {
        return R[static_cast<std::size_t>(i)].classification;
    };
    out.push_back(fact_row("corB.first_low", tag(lp - k + 1),
                           "first low point occurs at i = p - k + 1",
                           cls(lp - k + 1) == PointClass::Low, "low",
                           to_string(cls(lp - k + 1))));
    out.push_back(fact_row("corB.second_low", tag(lp),
                           "second low point occurs at i = p",
                           cls(lp) == PointClass::Low, "low",
                           to_string(cls(lp))));
    {
        long bad = -1;
        for (long i = 1; i <= lp; ++i) {
            if (i == lp - k + 1 || i == lp) continue;
            if (cls(i) == PointClass::Low) {
                bad = i;
                break;
            }
        }
        out.push_back(fact_row(
            "corB.no_other_lows", tag(),
            "no low point in 1 <= i <= p besides p - k + 1 and p", bad < 0,
            "none", bad < 0 ? "none" : "low point at i=" + num(bad)));
    }
    for (long i = 1; i <= lp - 2; ++i) {
        if (i == lp - k) continue;
        CheckOutcome o = value_row(
            "corB.rise_by_two", tag(i),
            "omega_{p^2}(theta^(i+1) f) == omega_{p^2}(theta^i f) + 2",
            R[static_cast<std::size_t>(i)].weight_filt + 2,
            R[static_cast<std::size_t>(i + 1)].weight_filt);
        // The statement's exclusion list stops at i = p-k, but its own
        // exact-value companion forces a rise of 2 + p(p-1) when stepping
        // off the first low point, so this instance fails as printed.
        if (i == lp - k + 1 && o.verdict == Verdict::Fail)
            o.note = "rise off the first low point is 2 + p(p-1); "
                     "the exclusion list omits i = p-k+1";
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_theorem_C() {
    std::vector<CheckOutcome> out;
    const Hypotheses& h = hypotheses();
    if (!h.satisfied()) {
        out.push_back(inapplicable(
            "thmC.hypotheses",
            "filtrations of theta^i f mod p^2 on the bands np <= i <= np+p-k+1"));
        return out;
    }
    long lp = static_cast<long>(p_), k = k_;
    long need = (lp - 1) * lp + (lp - k + 1);
    const CycleReport& rep = cycle_report(2, need);
    const auto& R = rep.records;
    for (long n = 1; n < lp; ++n) {
        for (long ip = 0; ip <= lp - k + 1; ++ip) {
            long i = n * lp + ip;
            const FiltrationRecord& r = R[static_cast<std::size_t>(i)];
            std::string inst = tag(i, n) + " i'=" + num(ip);
            long single = k + 2 * i + lp * (lp - 1);
            long full = k + 2 * i + 2 * lp * (lp - 1);
            CheckOutcome o;
            if (r.exceptional) {
                o = bound_row("thmC.bound.exceptional", inst,
                              "weight filtration at an exceptional index",
                              single, r.weight_filt);
            } else if (ip == 0) {
                o = bound_row("thmC.bound.band_start", inst,
                              "weight filtration bound at i' = 0", single,
                              r.weight_filt);
            } else if (ip < n && ip <= lp - k + 1 - n) {
                o = value_row("thmC.exact.single_drop", inst,
                              "omega_{p^2}(theta^i f) == k + 2i + p(p-1)",
                              single, r.weight_filt);
            } else if (n <= ip && ip <= lp - k + 1 - n) {
                o = value_row("thmC.exact.full_height", inst,
                              "omega_{p^2}(theta^i f) == k + 2i + 2p(p-1)",
                              full, r.weight_filt);
            } else if (ip < lp - k + 1) {
                o = bound_row("thmC.bound.upper_tail", inst,
                              "weight filtration bound for p-k+1-n < i' < p-k+1",
                              single, r.weight_filt);
            } else {
                o = bound_row("thmC.bound.band_end", inst,
                              "weight filtration bound at i' = p - k + 1",
                              single, r.weight_filt);
            }
            flag_degenerate(r, o);
            out.push_back(std::move(o));

            if (ip > 0 && ip < lp - k + 1) {
                CheckOutcome f;
                if (ip <= lp - k + 1 - n && !r.exceptional) {
                    f = value_row(
                        "thm4.1.exact", inst,
                        "factor filtration == k + 2i + (i'+p-n+1)(p-1)",
                        k + 2 * i + (ip + lp - n + 1) * (lp - 1),
                        r.factor_filt);
                } else {
                    f = bound_row(
                        "thm4.1.bound", inst,
                        "factor filtration bound past the exact range",
                        k + 2 * i + (ip + k - (n == 1 ? 1 : 2)) * (lp - 1),
                        r.factor_filt,
                        r.exceptional ? "exceptional index" : "i' > p-k+1-n");
                }
                flag_degenerate(r, f);
                out.push_back(std::move(f));
            }
        }
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_corollary_D() {
    std::vector<CheckOutcome> out;
    const Hypotheses& h = hypotheses();
    if (!h.satisfied()) {
        out.push_back(inapplicable(
            "corD.hypotheses",
            "low points and rises on the bands np <= i <= np+p-k+1"));
        return out;
    }
    long lp = static_cast<long>(p_), k = k_;
    long need = (lp - 1) * lp + (lp - k + 1);
    const CycleReport& rep = cycle_report(2, need);
    const auto& R = rep.records;
    auto W = [&](long i) { return R[static_cast<std::size_t>(i)].weight_filt; };
    auto cls = [&](long i) {
        return R[static_cast<std::size_t>(i)].classification;
    };
    // regular low points, possibly shifted by one
    for (long n = 1; 2 * n <= lp - k + 1; ++n) {
        long i = n * lp + lp - k + 2 - n;
        bool shifted = W(i) == k + 2 * i + lp * (lp - 1) &&
                       W(i + 1) == k + 2 * (i + 1);
        long at = shifted ? i + 1 : i;
        out.push_back(fact_row(
            "corD.regular_low", tag(at, n),
            "low point at i = np+p-k+2-n, or at its successor in the "
            "alternative case",
            cls(at) == PointClass::Low, "low", to_string(cls(at)),
            shifted ? "branch=shifted" : "branch=primary"));
    }
    // every exceptional index in the inner band range is a low point
    for (long e : rep.exceptional_indices) {
        long n = e / lp, ip = e % lp;
        if (ip < n || ip >= lp - k + 1 - n) continue;
        if (e + 1 > rep.i_max) continue;
        out.push_back(fact_row("corD.exceptional_low", tag(e, n),
                               "exceptional index is a low point",
                               cls(e) == PointClass::Low, "low",
                               to_string(cls(e))));
    }
    // non-exceptional band indices are not low points
    for (long n = 1; n < lp; ++n) {
        for (long i = n * lp + 1; i <= n * lp + lp - k + 1 - n; ++i) {
            if (R[static_cast<std::size_t>(i)].exceptional) continue;
            out.push_back(fact_row("corD.not_low", tag(i, n),
                                   "non-exceptional band index is not a low point",
                                   cls(i) != PointClass::Low, "not low",
                                   to_string(cls(i))));
        }
    }
    // rises by 2 away from np+n-1 and exceptional neighbors
    for (long n = 1; n < lp; ++n) {
        for (long i = n * lp + 1; i < n * lp + lp - k + 1 - n; ++i) {
            if (i == n * lp + n - 1) continue;
            if (R[static_cast<std::size_t>(i)].exceptional ||
                R[static_cast<std::size_t>(i + 1)].exceptional)
                continue;
            out.push_back(value_row(
                "corD.rise_by_two", tag(i, n),
                "omega_{p^2}(theta^(i+1) f) == omega_{p^2}(theta^i f) + 2",
                W(i) + 2, W(i + 1)));
        }
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_e2_powers_lemma(long n_max) {
    std::vector<CheckOutcome> out;
    long lp = static_cast<long>(p_), k = k_;
    if (n_max < 0) n_max = lp + 2;
    const Hypotheses& h = hypotheses();
    if (h.zero_mod_p || !h.filtration_matches) {
        CheckOutcome o;
        o.claim = "lemma2.4.hypotheses";
        o.instance = tag();
        o.statement =
            "factor filtration of (p) f E_2^n follows the stated formula";
        o.expected = "omega_p(f) = k";
        o.computed = h.zero_mod_p ? "f == 0 mod p"
                                  : "omega_p(f) = " + num(h.omega_p);
        o.verdict = Verdict::Inapplicable;
        out.push_back(std::move(o));
        return out;
    }
    Modulus mod2(p_, 2);
    long w2 = 2 + 2 * lp * (lp - 1);
    FiltrationContext ctx(mod2, guard_);
    std::size_t N = ctx.test_precision(k + n_max * w2);
    SeriesToolkit tk(mod2, N);
    QSeries e2rep = tk.e2_rep(N);
    QSeries Fn = tk.form_series(form_, N);
    FiltrationOutcome base = ctx.factor_filtration(Fn);
    bool H2 = !base.zero && base.p_divided == 0 && base.value == k;
    std::string h2note =
        H2 ? ""
           : "factor filtration of f mod p^2 is " + num(base.value) +
                 ", not k = " + num(k);
    for (long n = 0;; ++n) {
        long base_val = k + 2 * n + n * (lp - 1);
        {
            QSeries pf = series_scale(Fn, p_);
            FiltrationOutcome oc = ctx.factor_filtration(pf);
            CheckOutcome o = value_row(
                "lemma2.4.scaled", tag(-1, n),
                "factor filtration of p f E_2^n == k + 2n + n(p-1)", base_val,
                oc.zero ? -1 : oc.value);
            if (oc.zero) {
                o.computed = "zero series";
                o.verdict = Verdict::Fail;
            }
            out.push_back(std::move(o));
        }
        {
            CheckOutcome o;
            if (!H2) {
                o.claim = "lemma2.4.unscaled";
                o.instance = tag(-1, n);
                o.statement =
                    "factor filtration of f E_2^n follows the stated formula";
                o.expected = "additional hypothesis: factor filtration of f "
                             "mod p^2 equals k";
                o.computed = "unsatisfied";
                o.verdict = Verdict::Inapplicable;
                o.note = h2note;
            } else {
                long expect = n % lp == 0 ? base_val
                                          : base_val + (lp + 1) * (lp - 1);
                FiltrationOutcome oc = ctx.factor_filtration(Fn);
                o = value_row("lemma2.4.unscaled", tag(-1, n),
                              "factor filtration of f E_2^n equals the stated "
                              "value",
                              expect, oc.zero ? -1 : oc.value,
                              n % lp == 0 ? "p | n branch" : "p !| n branch");
                if (oc.zero || oc.p_divided) {
                    o.computed = oc.zero ? "zero series"
                                         : o.computed + " (p-divided)";
                    o.verdict = Verdict::Fail;
                }
            }
            out.push_back(std::move(o));
        }
        if (n == n_max) break;
        Fn = series_mul(Fn, e2rep);
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_bounds(long i_max) {
    std::vector<CheckOutcome> out;
    long lp = static_cast<long>(p_), k = k_;
    long period = lp * (lp - 1);
    if (i_max < 0) i_max = period + 4;
    const Hypotheses& h = hypotheses();
    const CycleReport& rep = cycle_report(2, i_max);
    const auto& R = rep.records;

    auto aggregate = [&](std::string claim, std::string statement,
                         std::string expected, long lo, long hi, auto&& pred,
                         std::string note = {}) {
        CheckOutcome o;
        o.claim = std::move(claim);
        o.instance = tag() + " i in [" + num(lo) + ".." + num(hi) + "]";
        o.statement = std::move(statement);
        o.expected = std::move(expected);
        o.note = std::move(note);
        long bad = -1, checked = 0;
        for (long i = lo; i <= hi; ++i) {
            const FiltrationRecord& r = R[static_cast<std::size_t>(i)];
            if (r.zero) continue;
            ++checked;
            if (!pred(r)) {
                bad = i;
                break;
            }
        }
        if (bad < 0) {
            o.computed = "holds at all " + num(checked) + " checked indices";
            o.verdict = Verdict::Pass;
        } else {
            const FiltrationRecord& r = R[static_cast<std::size_t>(bad)];
            o.computed = "violated at i=" + num(bad) +
                         ": weight=" + num(r.weight_filt) +
                         " factor=" + num(r.factor_filt);
            o.verdict = Verdict::Fail;
        }
        out.push_back(std::move(o));
    };

    if (h.satisfied()) {
        aggregate("bounds.filtcong",
                  "omega_{p^2}(theta^i f) == k + 2i mod p(p-1)",
                  "congruent at every index", 0, i_max,
                  [&](const FiltrationRecord& r) {
                      return r.p_divided == 0 &&
                             (r.weight_filt - (k + 2 * r.i)) % period == 0;
                  });
    } else {
        out.push_back(inapplicable(
            "bounds.filtcong",
            "omega_{p^2}(theta^i f) == k + 2i mod p(p-1)"));
    }
    aggregate("bounds.naive.factor",
              "factor filtration <= k + 2i + (i+p+1)(p-1)", "within bound", 0,
              i_max, [&](const FiltrationRecord& r) {
                  return r.factor_filt <=
                         k + 2 * r.i + (r.i + lp + 1) * (lp - 1);
              });
    aggregate("bounds.naive.weight",
              "weight filtration <= k + 2i + (ceil((i+1)/p)+1) p(p-1)",
              "within bound", 0, i_max, [&](const FiltrationRecord& r) {
                  long ceil_term = (r.i + lp) / lp;
                  return r.weight_filt <=
                         k + 2 * r.i + (ceil_term + 1) * period;
              });
    aggregate("bounds.trivial",
              "weight filtration <= k + 2i + 2ip(p-1)", "within bound", 0,
              i_max, [&](const FiltrationRecord& r) {
                  return r.weight_filt <= k + 2 * r.i + 2 * r.i * period;
              });
    aggregate("bounds.factor_le_weight",
              "factor filtration <= weight filtration", "within bound", 0,
              i_max, [&](const FiltrationRecord& r) {
                  return r.factor_filt <= r.weight_filt;
              });
    if (i_max >= 2) {
        long cf = k + 2 * (period + 1) + (lp * lp + 2) * (lp - 1);
        long cw = k + 2 * (period + 1) + (lp + 1) * period;
        aggregate("bounds.cubic.factor",
                  "factor filtration <= k + 2(p(p-1)+1) + (p^2+2)(p-1) for i "
                  ">= 2",
                  "within bound", 2, i_max,
                  [&](const FiltrationRecord& r) { return r.factor_filt <= cf; });
        aggregate("bounds.cubic.weight",
                  "weight filtration <= k + 2(p(p-1)+1) + (p+1)p(p-1) for i "
                  ">= 2",
                  "within bound", 2, i_max,
                  [&](const FiltrationRecord& r) { return r.weight_filt <= cw; });
    }
    {
        Modulus mod2 = rep.mod;
        aggregate("bounds.weight_from_factor",
                  "weight filtration is the least value >= the factor "
                  "filtration in its class mod p(p-1)",
                  "consistent at every index", 0, i_max,
                  [&](const FiltrationRecord& r) {
                      if (r.p_divided) return true;
                      return weight_from_factor(r.factor_filt, r.weight_filt,
                                                mod2) == r.weight_filt;
                  },
                  "p-divided records are checked over the reduced modulus by "
                  "the engine");
    }
    if (i_max >= period + 2) {
        aggregate("bounds.record_periodicity",
                  "filtrations at i and i + p(p-1) agree for i >= 2",
                  "equal pairs", 2, i_max - period,
                  [&](const FiltrationRecord& r) {
                      const FiltrationRecord& s =
                          R[static_cast<std::size_t>(r.i + period)];
                      return !s.zero && s.weight_filt == r.weight_filt &&
                             s.factor_filt == r.factor_filt;
                  });
    } else {
        CheckOutcome o;
        o.claim = "bounds.record_periodicity";
        o.instance = tag();
        o.statement = "filtrations at i and i + p(p-1) agree for i >= 2";
        o.expected = "i_max >= p(p-1) + 2";
        o.computed = "i_max = " + num(i_max);
        o.verdict = Verdict::Inapplicable;
        out.push_back(std::move(o));
    }
    if (h.satisfied() && i_max >= period && rep.theorem_mode) {
        long t_exact = lp + (lp - k - 4) * (lp - k + 1) / 2;
        long t_bound = lp + (lp - k + 1) * (lp - 1);
        out.push_back(fact_row(
            "bounds.census.exact", tag(),
            "exact filtration values at >= p + (p-k-4)(p-k+1)/2 positions in "
            "0..p(p-1)",
            rep.coverage.exact >= t_exact, ">= " + num(t_exact),
            num(rep.coverage.exact)));
        out.push_back(fact_row(
            "bounds.census.bounded", tag(),
            "nontrivial bounds at >= p + (p-k+1)(p-1) positions in 0..p(p-1)",
            rep.coverage.bounded >= t_bound, ">= " + num(t_bound),
            num(rep.coverage.bounded)));
    } else {
        for (const char* c : {"bounds.census.exact", "bounds.census.bounded"}) {
            CheckOutcome o;
            o.claim = c;
            o.instance = tag();
            o.statement = "census of theorem coverage over a full period";
            o.expected = "theorem mode and i_max >= p(p-1)";
            o.computed = h.satisfied() ? "i_max = " + num(i_max) : "unsatisfied";
            o.verdict = Verdict::Inapplicable;
            o.note = h.satisfied() ? "" : hypothesis_note();
            out.push_back(std::move(o));
        }
    }
    return out;
}

std::vector<CheckOutcome> Verifier::check_identities() {
    std::vector<CheckOutcome> out;
    long lp = static_cast<long>(p_);
    Modulus mod1(p_, 1), mod2(p_, 2);
    {
        constexpr std::size_t N = 200;
        SeriesToolkit tk(mod1, N);
        QSeries lhs = series_scale(
            serre_derivative(tk.eisenstein(lp - 1, N), tk.eisenstein(2, N)),
            12);
        QSeries rhs = tk.eisenstein(lp + 1, N);
        bool ok = agree_to(lhs, rhs, N);
        out.push_back(fact_row("identity.serre_epm1", tag(),
                               "12 serre_derivative(E_{p-1}) == E_{p+1} mod p",
                               ok, "equal to 200 coefficients",
                               ok ? "equal" : "differ"));
    }
    {
        constexpr std::size_t N = 200;
        SeriesToolkit tk(mod2, N);
        bool ok = agree_to(tk.e2_rep(N), tk.eisenstein(2, N), N);
        out.push_back(fact_row(
            "identity.e2_rep", tag(),
            "the weight 2+2p(p-1) representative == E_2 mod p^2", ok,
            "equal to 200 coefficients", ok ? "equal" : "differ"));
    }
    {
        constexpr std::size_t N = 100;
        SeriesToolkit tk(mod2, N);
        QSeries E2 = tk.eisenstein(2, N);
        QSeries E = tk.eisenstein(lp - 1, N);
        QSeries G = tk.eisenstein(lp + 1, N);
        QSeries A = series_scale(serre_derivative(E, E2), 12);
        QSeries L = series_pow(E, static_cast<std::uint64_t>(2 * lp - 1));
        QSeries lhs = E2;                 // E_2^n
        QSeries An = A;                   // (12 dE)^n
        QSeries Ln = L;                   // E^(n(2p-1))
        QSeries Gn = series_pow(G, static_cast<std::uint64_t>(lp));  // E_{p+1}^(n+p-1)
        QSeries Ln1 = series_pow(E, static_cast<std::uint64_t>(lp - 2));
        for (long n = 1; n <= 2 * lp; ++n) {
            std::uint64_t pn = p_ * static_cast<std::uint64_t>(n % lp);
            QSeries rhs = series_add(series_mul(An, Ln),
                                     series_scale(series_mul(Gn, Ln1), pn));
            bool ok = agree_to(lhs, rhs, N);
            out.push_back(fact_row(
                "identity.e2_power", tag(-1, n),
                "E_2^n == (12 dE_{p-1})^n E_{p-1}^(n(2p-1)) + p n "
                "E_{p+1}^(n+p-1) E_{p-1}^((n-1)(2p-1)+p-2) mod p^2",
                ok, "equal to 100 coefficients", ok ? "equal" : "differ"));
            if (n < 2 * lp) {
                lhs = series_mul(lhs, E2);
                An = series_mul(An, A);
                Ln = series_mul(Ln, L);
                Gn = series_mul(Gn, G);
                Ln1 = series_mul(Ln1, L);
            }
        }
    }
    {
        constexpr std::size_t N = 100;
        SeriesToolkit tk(mod2, N);
        QSeries f = tk.form_series(form_, N);
        QSeries it = f;
        for (unsigned i = 0; i <= 10; ++i) {
            QSeries ex = theta_power_expansion(f, i);
            bool ok = agree_to(it, ex, N);
            out.push_back(fact_row(
                "identity.theta_expansion", tag(static_cast<long>(i)),
                "the E_2-power expansion of theta^i f matches i applications "
                "of theta",
                ok, "equal to 100 coefficients", ok ? "equal" : "differ"));
            it = theta_apply(it);
        }
    }
    {
        constexpr std::size_t N = 64;
        SeriesToolkit tk(mod2, N);
        QSeries cur = tk.form_series(form_, N);
        long shift = lp * (lp - 1);
        std::vector<QSeries> keep;
        for (long i = 1; i <= 4 + shift; ++i) {
            cur = theta_apply(cur);
            if (i >= 2 && i <= 4) keep.push_back(cur);
            if (i >= 2 + shift) {
                long base_i = i - shift;
                bool ok = agree_to(cur, keep[static_cast<std::size_t>(base_i - 2)], N);
                out.push_back(fact_row(
                    "identity.theta_periodicity", tag(base_i),
                    "theta^(i + p(p-1)) f == theta^i f mod p^2 for i >= 2", ok,
                    "equal to 64 coefficients", ok ? "equal" : "differ"));
            }
        }
    }
    return out;
}

const std::vector<std::string>& Verifier::claim_sets() {
    static const std::vector<std::string> sets = {
        "prop2.2", "thmA",   "corB",   "thmC",       "corD",
        "lemma2.4", "bounds", "identities", "all"};
    return sets;
}

std::vector<CheckOutcome> Verifier::run(const std::string& claim_set) {
    if (claim_set == "prop2.2") return check_prop_jochnowitz();
    if (claim_set == "thmA") return check_theorem_A();
    if (claim_set == "corB") return check_corollary_B();
    if (claim_set == "thmC") return check_theorem_C();
    if (claim_set == "corD") return check_corollary_D();
    if (claim_set == "lemma2.4") return check_e2_powers_lemma();
    if (claim_set == "bounds") return check_bounds();
    if (claim_set == "identities") return check_identities();
    if (claim_set == "all") {
        std::vector<CheckOutcome> out;
        for (const std::string& s : claim_sets()) {
            if (s == "all") continue;
            auto part = run(s);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    throw std::domain_error("unknown claim set: " + claim_set);
}

} // namespace thetacycle
