#include "thetacycle/toolkit.hpp"

namespace thetacycle {

SeriesToolkit::SeriesToolkit(Modulus mod, std::size_t initial_precision)
    : mod_(mod) {
    inv12_ = inv_mod(12 % mod_.pm, mod_);
    ensure_precision(std::max<std::size_t>(initial_precision, 8));
}

void SeriesToolkit::ensure_precision(std::size_t n) {
    if (n <= prec_) return;
    prec_ = ((n + 63) / 64) * 64;   // grow in blocks to limit rebuilds
    rebuild();
}

void SeriesToolkit::rebuild() {
    eis_.clear();
    rpow_.clear();
    epm1pow_.clear();
    invepm1pow_.clear();
    has_e2rep_ = false;

    delta_ = generator_qexp(Generator::Delta, mod_, prec_);
    QSeries e4 = cached_eisenstein(4);
    QSeries e6 = cached_eisenstein(6);
    QSeries inv_e4 = series_invert(e4);
    QSeries inv_e6 = series_invert(e6);
    QSeries one = QSeries::constant(mod_, prec_, 1);

    e4pow_ = {e4, {}, {one, e4}, {one}};
    inve4pow_ = {inv_e4, {}, {one, inv_e4}, {one}};
    e6pow_ = {e6, {}, {one, e6}, {one}};
    inve6pow_ = {inv_e6, {}, {one, inv_e6}, {one}};

    rpow_.push_back(one);
    QSeries r1 = series_mul(delta_, series_pow(inv_e4, 3));
    r1.clear_weight_tag();
    rpow_.push_back(std::move(r1));
}

QSeries SeriesToolkit::cached_eisenstein(long k) {
    for (const auto& [kk, s] : eis_)
        if (kk == k) return s;
    QSeries s = eisenstein_qexp(k, mod_, prec_);
    eis_.emplace_back(k, s);
    return s;
}

QSeries SeriesToolkit::eisenstein(long k, std::size_t n) {
    ensure_precision(n);
    return cached_eisenstein(k).truncated(n);
}

QSeries SeriesToolkit::delta(std::size_t n) {
    ensure_precision(n);
    return delta_.truncated(n);
}

QSeries SeriesToolkit::e2_rep(std::size_t n) {
    ensure_precision(n);
    if (!has_e2rep_) {
        e2rep_ = e2_representative_mod_p2(mod_, prec_);
        has_e2rep_ = true;
    }
    return e2rep_.truncated(n);
}

QSeries SeriesToolkit::form_series(const FormExpr& f, std::size_t n) {
    return eval_form_expr(f, mod_, n);
}

QSeries SeriesToolkit::pow_from(PowTable& t, long e) {
    if (e < 0) throw std::domain_error("power table: negative exponent");
    std::size_t lo = static_cast<std::size_t>(e & 63);
    std::size_t hi = static_cast<std::size_t>(e >> 6);
    std::size_t need_small = hi > 0 ? 63 : lo;
    while (t.small.size() <= need_small)
        t.small.push_back(series_mul(t.small.back(), t.base));
    if (hi > 0 && t.b64.empty())
        t.b64 = series_mul(t.small[63], t.base);
    while (t.big.size() <= hi)
        t.big.push_back(series_mul(t.big.back(), t.b64));
    if (hi == 0) return t.small[lo];
    if (lo == 0) return t.big[hi];
    return series_mul(t.big[hi], t.small[lo]);
}

const QSeries& SeriesToolkit::r_power(std::size_t j) {
    while (rpow_.size() <= j)
        rpow_.push_back(series_mul(rpow_.back(), rpow_[1]));
    return rpow_[j];
}

QSeries SeriesToolkit::e4_power(long a) { return pow_from(e4pow_, a); }
QSeries SeriesToolkit::inv_e4_power(long a) { return pow_from(inve4pow_, a); }
QSeries SeriesToolkit::e6_power(int b) { return pow_from(e6pow_, b); }
QSeries SeriesToolkit::inv_e6_power(int b) { return pow_from(inve6pow_, b); }

QSeries SeriesToolkit::epm1_power(long e) {
    if (e < 0) throw std::domain_error("power table: negative exponent");
    std::uint64_t period = 1;
    for (unsigned i = 1; i < mod_.m; ++i) period *= mod_.p;
    std::size_t idx = static_cast<std::size_t>(e % static_cast<long>(period));
    if (epm1pow_.empty()) {
        epm1pow_.push_back(QSeries::constant(mod_, prec_, 1));
        epm1pow_.push_back(cached_eisenstein(static_cast<long>(mod_.p) - 1));
    }
    while (epm1pow_.size() <= idx)
        epm1pow_.push_back(series_mul(epm1pow_.back(), epm1pow_[1]));
    return epm1pow_[idx];
}

QSeries SeriesToolkit::inv_epm1_power(long e) {
    if (e < 0) throw std::domain_error("power table: negative exponent");
    std::uint64_t period = 1;
    for (unsigned i = 1; i < mod_.m; ++i) period *= mod_.p;
    std::size_t idx = static_cast<std::size_t>(e % static_cast<long>(period));
    if (invepm1pow_.empty()) {
        invepm1pow_.push_back(QSeries::constant(mod_, prec_, 1));
        invepm1pow_.push_back(
            series_invert(cached_eisenstein(static_cast<long>(mod_.p) - 1)));
    }
    while (invepm1pow_.size() <= idx)
        invepm1pow_.push_back(series_mul(invepm1pow_.back(), invepm1pow_[1]));
    return invepm1pow_[idx];
}

} // namespace thetacycle
