#include "thetacycle/filtration.hpp"

namespace thetacycle {

long weight_from_factor(long factor_value, long weight_class, const Modulus& mod) {
    long step = static_cast<long>(mod.p - 1);
    for (unsigned i = 1; i < mod.m; ++i) step *= static_cast<long>(mod.p);
    long r = weight_class % step;
    if (r < 0) r += step;
    if (factor_value <= r) return r;
    long q = (factor_value - r + step - 1) / step;
    return r + q * step;
}

FiltrationContext::FiltrationContext(Modulus mod, std::size_t guard)
    : mod_(mod), guard_(guard) {
    toolkits_.resize(mod.m);
}

SeriesToolkit& FiltrationContext::toolkit(unsigned m_eff) {
    if (m_eff < 1 || m_eff > mod_.m)
        throw std::domain_error("filtration: invalid modulus exponent");
    auto& slot = toolkits_[m_eff - 1];
    if (!slot)
        slot = std::make_unique<SeriesToolkit>(
            m_eff == mod_.m ? mod_ : mod_.reduced(mod_.m - m_eff));
    return *slot;
}

std::size_t FiltrationContext::test_precision(long W) const {
    return static_cast<std::size_t>(dim_modular_forms(W)) + guard_;
}

FiltrationContext::Prepared FiltrationContext::prepare(const QSeries& s) {
    if (s.modulus() != mod_)
        throw std::domain_error("filtration: series modulus mismatch");
    if (!s.weight_tag() || s.quasimodular())
        throw std::domain_error("filtration: series needs a modular weight tag");
    Prepared pre;
    pre.W = *s.weight_tag();
    pre.P = test_precision(pre.W);
    if (s.precision() < pre.P)
        throw std::domain_error("filtration: insufficient precision (need "
                                + std::to_string(pre.P) + " coefficients)");
    unsigned v = p_valuation(s);
    if (v >= mod_.m) {
        pre.zero = true;
        return pre;
    }
    pre.v = v;
    pre.stripped = v ? strip_p_power(s, v) : s;
    return pre;
}

std::optional<std::vector<std::uint64_t>>
FiltrationContext::coords_at(SeriesToolkit& tk, const QSeries& s0, long W, long w,
                             std::size_t P) {
    long d = dim_modular_forms(w);
    if (d == 0) return std::nullopt;
    const Modulus& mod = tk.modulus();
    if ((W - w) % static_cast<long>(mod.p - 1) != 0)
        throw std::logic_error("filtration: weight off the (p-1) ladder");
    long e = (W - w) / static_cast<long>(mod.p - 1);
    if (e < 0) throw std::logic_error("filtration: weight above the comparison weight");

    tk.ensure_precision(P);
    QSeries t = s0.truncated(P);
    long period = 1;
    for (unsigned i = 1; i < mod.m; ++i) period *= static_cast<long>(mod.p);
    if (e % period != 0)   // E_{p-1}^(p^(m-1)) == 1 mod p^m, so e == 0 is a no-op
        t = series_mul_prec(t, tk.inv_epm1_power(e), P);
    MonomialShape sh = monomial_shape(w);
    if (sh.a0 > 0) t = series_mul_prec(t, tk.inv_e4_power(sh.a0), P);
    if (sh.b) t = series_mul_prec(t, tk.inv_e6_power(1), P);
    if (t.precision() < P)
        throw std::logic_error("filtration: internal precision shortfall");

    tk.r_power(static_cast<std::size_t>(d) - 1);   // pre-grow; refs stay valid
    std::vector<std::uint64_t> coords(static_cast<std::size_t>(d), 0);
    auto& tv = t.coeffs();
    for (long j = 0; j < d; ++j) {
        std::uint64_t c = tv[static_cast<std::size_t>(j)];
        coords[static_cast<std::size_t>(j)] = c;
        if (c == 0) continue;
        const QSeries& rj = tk.r_power(static_cast<std::size_t>(j));
        std::uint64_t neg = mod.pm - c;
        for (std::size_t idx = static_cast<std::size_t>(j); idx < P; ++idx)
            tv[idx] = (tv[idx] + neg * rj[idx]) % mod.pm;
    }
    for (std::size_t idx = static_cast<std::size_t>(d); idx < P; ++idx)
        if (tv[idx] != 0) return std::nullopt;
    return coords;
}

QSeries FiltrationContext::form_from_coords(long w,
                                            const std::vector<std::uint64_t>& coords,
                                            std::size_t n, unsigned m_eff) {
    SeriesToolkit& tk = toolkit(m_eff);
    tk.ensure_precision(n);
    const Modulus& mod = tk.modulus();
    if (coords.size() != static_cast<std::size_t>(dim_modular_forms(w)))
        throw std::domain_error("filtration: coordinate count does not match dim M_w");
    tk.r_power(coords.empty() ? 0 : coords.size() - 1);
    QSeries acc = QSeries::zero(mod, n);
    auto& av = acc.coeffs();
    for (std::size_t j = 0; j < coords.size(); ++j) {
        std::uint64_t c = coords[j];
        if (c == 0) continue;
        const QSeries& rj = tk.r_power(j);
        for (std::size_t idx = j; idx < n; ++idx)
            av[idx] = (av[idx] + c * rj[idx]) % mod.pm;
    }
    MonomialShape sh = monomial_shape(w);
    if (sh.a0 > 0) acc = series_mul_prec(acc, tk.e4_power(sh.a0), n);
    if (sh.b) acc = series_mul_prec(acc, tk.e6_power(1), n);
    acc.set_weight_tag(w);
    return acc;
}

std::optional<std::vector<std::uint64_t>>
FiltrationContext::membership_coords(const QSeries& s, long w) {
    if (w < 0 || w % 2 != 0)
        throw std::domain_error("membership_coords: weight must be even and nonnegative");
    Prepared pre = prepare(s);
    if (pre.zero)
        return std::vector<std::uint64_t>(
            static_cast<std::size_t>(dim_modular_forms(w)), 0);
    unsigned m_eff = mod_.m - pre.v;
    if ((pre.W - w) % static_cast<long>(mod_.p - 1) != 0)
        return std::nullopt;
    long e = (pre.W - w) / static_cast<long>(mod_.p - 1);
    long period = 1;
    for (unsigned i = 1; i < m_eff; ++i) period *= static_cast<long>(mod_.p);
    if (e < 0 || e % period != 0)
        return std::nullopt;
    return coords_at(toolkit(m_eff), pre.stripped, pre.W, w, pre.P);
}

std::optional<QSeries> FiltrationContext::membership(const QSeries& s, long w) {
    if (w < 0 || w % 2 != 0)
        throw std::domain_error("membership: weight must be even and nonnegative");
    Prepared pre = prepare(s);
    if (pre.zero) {
        QSeries z = QSeries::zero(mod_, pre.P);
        z.set_weight_tag(w);
        return z;
    }
    // Nonzero reductions of forms of weights w and W agree only when
    // w == W mod p^(m_eff-1)(p-1); otherwise the answer is no.
    unsigned m_eff = mod_.m - pre.v;
    if ((pre.W - w) % static_cast<long>(mod_.p - 1) != 0)
        return std::nullopt;
    long e = (pre.W - w) / static_cast<long>(mod_.p - 1);
    long period = 1;
    for (unsigned i = 1; i < m_eff; ++i) period *= static_cast<long>(mod_.p);
    if (e < 0 || e % period != 0)
        return std::nullopt;
    // p^v * g with g in M_w mod p^(m-v) lifts to a weight-w witness mod p^m.
    auto coords = coords_at(toolkit(m_eff), pre.stripped, pre.W, w, pre.P);
    if (!coords) return std::nullopt;
    QSeries g = form_from_coords(w, *coords, pre.P, mod_.m);
    if (pre.v) {
        std::uint64_t pv = 1;
        for (unsigned i = 0; i < pre.v; ++i) pv *= mod_.p;
        g = series_scale(g, pv);
        g.set_weight_tag(w);
    }
    return g;
}

FiltrationOutcome FiltrationContext::weight_search(const Prepared& pre,
                                                   std::vector<std::uint64_t>* coords_out) {
    unsigned m_eff = mod_.m - pre.v;
    SeriesToolkit& tk = toolkit(m_eff);
    long step = static_cast<long>(mod_.p - 1);
    for (unsigned i = 1; i < m_eff; ++i) step *= static_cast<long>(mod_.p);
    long w0 = pre.W % step;
    for (long w = w0; w <= pre.W; w += step) {
        auto coords = coords_at(tk, pre.stripped, pre.W, w, pre.P);
        if (!coords) continue;
        FiltrationOutcome out;
        out.value = w;
        out.p_divided = pre.v;
        out.witness_exponent = 0;
        out.witness = form_from_coords(w, *coords, pre.P, m_eff);
        out.witness_coords = *coords;
        if (coords_out) *coords_out = std::move(*coords);
        return out;
    }
    throw std::logic_error("filtration: tagged weight failed its own membership test");
}

namespace {
FiltrationOutcome zero_outcome() {
    FiltrationOutcome out;
    out.zero = true;
    return out;
}
} // namespace

FiltrationOutcome FiltrationContext::weight_filtration(const QSeries& s) {
    Prepared pre = prepare(s);
    if (pre.zero) return zero_outcome();
    return weight_search(pre, nullptr);
}

std::pair<FiltrationOutcome, FiltrationOutcome>
FiltrationContext::filtration_pair(const QSeries& s) {
    Prepared pre = prepare(s);
    if (pre.zero) return {zero_outcome(), zero_outcome()};
    std::vector<std::uint64_t> coords;
    FiltrationOutcome weight = weight_search(pre, &coords);

    // Membership along the descending (p-1) ladder is upward closed (multiply
    // any witness by E_{p-1}), so the least admissible weight is found by
    // binary search on the number of steps below the weight filtration.
    unsigned m_eff = mod_.m - pre.v;
    SeriesToolkit& tk = toolkit(m_eff);
    long pm1 = static_cast<long>(mod_.p - 1);
    long lo = 0, hi = weight.value / pm1;
    std::vector<std::uint64_t> best = std::move(coords);
    while (lo < hi) {
        long mid = lo + (hi - lo + 1) / 2;
        auto trial = coords_at(tk, pre.stripped, pre.W, weight.value - mid * pm1, pre.P);
        if (trial) {
            lo = mid;
            best = std::move(*trial);
        } else {
            hi = mid - 1;
        }
    }
    FiltrationOutcome factor;
    factor.value = weight.value - lo * pm1;
    factor.p_divided = pre.v;
    factor.witness_exponent = lo;
    factor.witness = form_from_coords(factor.value, best, pre.P, m_eff);
    factor.witness_coords = std::move(best);
    return {std::move(weight), std::move(factor)};
}

FiltrationOutcome FiltrationContext::factor_filtration(const QSeries& s) {
    return filtration_pair(s).second;
}

} // namespace thetacycle
