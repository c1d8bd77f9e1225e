#include "thetacycle/cycle.hpp"

namespace thetacycle {

const char* to_string(TheoremStatus s) {
    switch (s) {
    case TheoremStatus::Exact: return "exact";
    case TheoremStatus::Bound: return "theorem-bound";
    case TheoremStatus::Engine: return "engine-computed";
    }
    return "engine-computed";
}

const char* to_string(PointClass c) {
    switch (c) {
    case PointClass::Low: return "low";
    case PointClass::Rise: return "rise";
    case PointClass::Fall: return "fall";
    case PointClass::Plateau: return "plateau";
    case PointClass::Boundary: return "boundary";
    }
    return "boundary";
}

bool is_exceptional(std::uint64_t p, long k, long i) {
    if (i < 0) return false;
    long n = i / static_cast<long>(p);
    if (n < 1 || n >= static_cast<long>(p)) return false;
    long i_prime = i - n * static_cast<long>(p);
    if (i_prime > static_cast<long>(p) - k + 1) return false;
    long long pp = static_cast<long long>(p);
    long long val = (static_cast<long long>(i) % pp) * (i % pp) % pp;
    val = (val + (static_cast<long long>(k) - 1) % pp * (i % pp)) % pp;
    val = (val - static_cast<long long>(n) % pp * (n % pp)) % pp;
    val %= pp;
    if (val < 0) val += pp;
    return val == 0;
}

std::vector<long> exceptional_indices(std::uint64_t p, long k, long i_max) {
    std::vector<long> out;
    for (long n = 1; n < static_cast<long>(p); ++n) {
        long base = n * static_cast<long>(p);
        if (base > i_max) break;
        long hi = base + static_cast<long>(p) - k + 1;
        for (long i = base; i <= std::min(hi, i_max); ++i)
            if (is_exceptional(p, k, i)) out.push_back(i);
    }
    return out;
}

TheoremStatus theorem_status(std::uint64_t p, long k, unsigned m, long i) {
    long P = static_cast<long>(p);
    if (m == 1) return TheoremStatus::Exact;   // four-case formula plus periodicity
    if (m != 2) return TheoremStatus::Engine;
    if (i <= P) return TheoremStatus::Exact;   // first-interval values
    long n = i / P;
    long i_prime = i - n * P;
    if (n >= 1 && n < P && i_prime <= P - k + 1) {
        if (is_exceptional(p, k, i)) return TheoremStatus::Bound;
        if (i_prime == 0 || i_prime == P - k + 1) return TheoremStatus::Bound;
        if (i_prime <= P - k + 1 - n) return TheoremStatus::Exact;
        return TheoremStatus::Bound;
    }
    return TheoremStatus::Engine;
}

OrdinarityCriteria ordinarity_criteria(const FormExpr& f, std::uint64_t p) {
    Modulus mod(p, 1);
    long k = f.weight();
    long cmp_weight = k + (static_cast<long>(p) + 1) * (static_cast<long>(p) - 1);
    std::size_t n = static_cast<std::size_t>(dim_modular_forms(cmp_weight)) + 5;
    QSeries g = eval_form_expr(f, mod, std::max<std::size_t>(n, p + 2));
    OrdinarityCriteria crit;
    crit.up_vanishing = true;
    for (std::size_t t = p; t < g.precision(); t += p)
        if (g[t] != 0) { crit.up_vanishing = false; break; }
    QSeries h = g;
    for (std::uint64_t j = 0; j + 1 < p; ++j) h = theta_apply(h);
    crit.theta_fixed_point = agree_to(h, g, g.precision());
    return crit;
}

bool is_ordinary(const FormExpr& f, std::uint64_t p) {
    return !ordinarity_criteria(f, p).up_vanishing;
}

namespace {

void classify_in_place(std::vector<FiltrationRecord>& rec, long period,
                       long periodic_from) {
    // Records are indexed by i, so the successor of the final record is the
    // record one full period back once the cycle has become periodic.
    auto successor = [&](std::size_t t) -> const FiltrationRecord* {
        if (t + 1 < rec.size()) return &rec[t + 1];
        long wrapped = static_cast<long>(t) + 1 - period;
        if (period > 0 && wrapped >= periodic_from
            && wrapped < static_cast<long>(rec.size()))
            return &rec[wrapped];
        return nullptr;
    };
    for (std::size_t t = 0; t < rec.size(); ++t) {
        auto& r = rec[t];
        const FiltrationRecord* next = successor(t);
        if (r.zero || t == 0 || !next || rec[t - 1].zero || next->zero) {
            r.classification = PointClass::Boundary;
            continue;
        }
        long in = r.weight_filt - rec[t - 1].weight_filt;
        long out = next->weight_filt - r.weight_filt;
        if (in < 0 && out > 0)
            r.classification = PointClass::Low;
        else if (out > 0)
            r.classification = PointClass::Rise;
        else if (out < 0)
            r.classification = PointClass::Fall;
        else
            r.classification = PointClass::Plateau;
    }
}

long cycle_period(const Modulus& mod) {
    long period = static_cast<long>(mod.p - 1);
    for (unsigned t = 1; t < mod.m; ++t) period *= static_cast<long>(mod.p);
    return period;
}

} // namespace

CycleReport classify_points(CycleReport report) {
    classify_in_place(report.records, cycle_period(report.mod),
                      report.periodic_from);
    return report;
}

CycleReport compute_cycle(const FormExpr& f, const Modulus& mod,
                          const CycleOptions& opts) {
    f.validate();
    if (mod.m > 2)
        throw std::domain_error("compute_cycle: only p and p^2 moduli are supported");
    long k = f.weight();
    long P = static_cast<long>(mod.p);
    long i_max = opts.i_max;
    if (i_max < 0) {
        i_max = (P - 1);
        for (unsigned t = 1; t < mod.m; ++t) i_max *= P;
        i_max += mod.m - 1;
    }

    if (opts.theorem_mode) {
        if (!(0 < k && k < P))
            throw std::domain_error("compute_cycle: theorem mode needs 0 < k < p "
                                    "(k = " + std::to_string(k) + ", p = "
                                    + std::to_string(mod.p) + ")");
        FiltrationContext ctx1(Modulus(mod.p, 1), opts.guard);
        QSeries f1 = eval_form_expr(f, Modulus(mod.p, 1),
                                    ctx1.test_precision(k));
        FiltrationOutcome w1 = ctx1.weight_filtration(f1);
        if (w1.zero || w1.p_divided != 0 || w1.value != k)
            throw std::domain_error("compute_cycle: theorem mode needs omega_p(f) = k"
                                    " but omega_p(f) = "
                                    + (w1.zero ? std::string("-inf (f == 0 mod p)")
                                               : std::to_string(w1.value)));
    }

    CycleReport report;
    report.mod = mod;
    report.k = k;
    report.form = f.to_string();
    report.i_max = i_max;
    report.theorem_mode = opts.theorem_mode;
    report.ordinary = is_ordinary(f, mod.p);
    report.periodic_from = mod.m;
    report.exceptional_indices = exceptional_indices(mod.p, k, i_max);

    FiltrationContext ctx(mod, opts.guard);

    long step_raise = mod.m == 2 ? 2 + 2 * P * (P - 1) : P + 1;
    // presize the main toolkit for the practical weight ceiling of the run
    long w_cap = k + 2 * i_max + 2 * step_raise + 24;
    ctx.toolkit(mod.m).ensure_precision(
        std::max(opts.precision_floor,
                 static_cast<std::size_t>(dim_modular_forms(w_cap)) + opts.guard));

    struct Rep {
        long w = 0;
        unsigned v = 0;
        std::vector<std::uint64_t> coords;
    };

    report.records.reserve(static_cast<std::size_t>(i_max) + 1);
    Rep rep;
    bool dead = false;         // theta^i f == 0 mod p^m from here on
    bool chain_clean = true;   // no p-division so far, weight classes intact
    for (long i = 0; i <= i_max; ++i) {
        FiltrationRecord r;
        r.i = i;
        r.n = i / P;
        r.i_prime = i - r.n * P;
        r.exceptional = is_exceptional(mod.p, k, i);
        r.status = opts.theorem_mode ? theorem_status(mod.p, k, mod.m, i)
                                     : TheoremStatus::Engine;
        if (dead) {
            r.zero = true;
            report.records.push_back(std::move(r));
            continue;
        }

        QSeries s;
        if (i == 0) {
            s = eval_form_expr(f, mod, ctx.test_precision(k));
        } else {
            long W = rep.w + step_raise;
            std::size_t N = ctx.test_precision(W);
            QSeries g = ctx.form_from_coords(rep.w, rep.coords, N, mod.m);
            if (rep.v) {
                std::uint64_t pv = 1;
                for (unsigned t = 0; t < rep.v; ++t) pv *= mod.p;
                g = series_scale(g, pv);
            }
            s = theta_apply(g);
            s.set_weight_tag(W);
        }

        auto [weight, factor] = ctx.filtration_pair(s);
        if (weight.zero) {
            dead = true;
            r.zero = true;
            report.records.push_back(std::move(r));
            continue;
        }
        r.weight_filt = weight.value;
        r.factor_filt = factor.value;
        r.p_divided = weight.p_divided;

        // internal consistency: the weight class and the factor value must
        // reproduce the weight filtration
        Modulus eff = weight.p_divided ? mod.reduced(weight.p_divided) : mod;
        if (weight_from_factor(factor.value, weight.value, eff) != weight.value)
            throw std::logic_error("compute_cycle: factor/weight filtration mismatch");
        if (chain_clean && weight.p_divided == 0) {
            long step = P - 1;
            for (unsigned t = 1; t < mod.m; ++t) step *= P;
            if ((weight.value - (k + 2 * i)) % step != 0)
                throw std::logic_error("compute_cycle: weight filtration off the "
                                       "k + 2i class");
        }
        if (weight.p_divided != 0) chain_clean = false;

        rep.w = weight.value;
        rep.v = weight.p_divided;
        rep.coords = std::move(weight.witness_coords);
        report.records.push_back(std::move(r));
    }

    classify_in_place(report.records, cycle_period(mod), report.periodic_from);

    long census_top = std::min(i_max, P * (P - 1));
    for (long i = 0; i <= census_top; ++i) {
        const auto& r = report.records[static_cast<std::size_t>(i)];
        ++report.coverage.total;
        if (r.status == TheoremStatus::Exact) ++report.coverage.exact;
        if (r.status != TheoremStatus::Engine) ++report.coverage.bounded;
    }
    if (report.coverage.total > 0) {
        report.coverage.exact_fraction =
            static_cast<double>(report.coverage.exact) / report.coverage.total;
        report.coverage.bounded_fraction =
            static_cast<double>(report.coverage.bounded) / report.coverage.total;
    }
    return report;
}

} // namespace thetacycle
