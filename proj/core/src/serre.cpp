#include "thetacycle/serre.hpp"

namespace thetacycle {

QSeries serre_derivative(const QSeries& f) {
    return serre_derivative(f, eisenstein_qexp(2, f.modulus(), f.precision()));
}

QSeries serre_derivative(const QSeries& f, const QSeries& e2) {
    if (!f.weight_tag() || f.quasimodular())
        throw std::domain_error("serre_derivative: input needs a modular weight tag");
    long k = *f.weight_tag();
    const Modulus& mod = f.modulus();
    std::uint64_t c = mul_mod(reduce_int(k, mod), inv_mod(12 % mod.pm, mod), mod);
    QSeries r = series_sub(theta_apply(f), series_scale(series_mul(f, e2), c));
    r.set_weight_tag(k + 2);
    return r;
}

QSeries modified_serre_power(const QSeries& f, unsigned i) {
    return modified_serre_power(f, i,
                                eisenstein_qexp(2, f.modulus(), f.precision()),
                                eisenstein_qexp(4, f.modulus(), f.precision()));
}

QSeries modified_serre_power(const QSeries& f, unsigned i,
                             const QSeries& e2, const QSeries& e4) {
    if (!f.weight_tag() || f.quasimodular())
        throw std::domain_error("modified_serre_power: input needs a modular weight tag");
    long k = *f.weight_tag();
    const Modulus& mod = f.modulus();
    if (i == 0) return f;
    QSeries prev = f;
    QSeries cur = serre_derivative(f, e2);
    std::uint64_t inv144 = inv_mod(144 % mod.pm, mod);
    for (unsigned t = 1; t < i; ++t) {
        // next = serre(cur) - t(t+k-1)/144 * E4 * prev
        std::uint64_t c = mul_mod(reduce_int(t, mod),
                                  reduce_int(t + k - 1, mod), mod);
        c = mul_mod(c, inv144, mod);
        QSeries next = series_sub(serre_derivative(cur, e2),
                                  series_scale(series_mul(e4, prev), c));
        next.set_weight_tag(k + 2 * (t + 1));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

QSeries theta_power_expansion(const QSeries& f, unsigned i) {
    if (!f.weight_tag() || f.quasimodular())
        throw std::domain_error("theta_power_expansion: input needs a modular weight tag");
    long k = *f.weight_tag();
    const Modulus& mod = f.modulus();
    std::size_t n = f.precision();
    QSeries e2 = eisenstein_qexp(2, mod, n);
    QSeries e4 = eisenstein_qexp(4, mod, n);
    QSeries e2_over_12 = series_scale(e2, inv_mod(12 % mod.pm, mod));
    e2_over_12.clear_weight_tag();

    // powers of E2/12 and the D^j f ladder
    std::vector<QSeries> e2pow;
    e2pow.reserve(i + 1);
    e2pow.push_back(QSeries::constant(mod, n, 1));
    for (unsigned t = 1; t <= i; ++t)
        e2pow.push_back(series_mul(e2pow.back(), e2_over_12));

    QSeries acc = QSeries::zero(mod, n);
    QSeries dprev = f, dcur = f;
    for (unsigned j = 0; j <= i; ++j) {
        if (j == 1) {
            dcur = serre_derivative(f, e2);
        } else if (j >= 2) {
            std::uint64_t c = mul_mod(reduce_int(j - 1, mod),
                                      reduce_int(j - 1 + k - 1, mod), mod);
            c = mul_mod(c, inv_mod(144 % mod.pm, mod), mod);
            QSeries next = series_sub(serre_derivative(dcur, e2),
                                      series_scale(series_mul(e4, dprev), c));
            next.set_weight_tag(k + 2 * j);
            dprev = dcur;
            dcur = std::move(next);
        }
        ValUnit scalar = vu_mul(binomial_vu(i, j, mod),
                                rising_ratio_vu(i + k - 1, j + k - 1, mod), mod);
        if (scalar.is_zero(mod)) continue;
        QSeries term = series_scale(series_mul(dcur, e2pow[i - j]),
                                    scalar.residue(mod));
        acc = series_add(acc, term);
    }
    acc.clear_weight_tag();
    return acc;
}

QSeries e2_representative_mod_p2(const Modulus& mod, std::size_t n) {
    if (mod.m != 2)
        throw std::domain_error("e2_representative_mod_p2: modulus must be p^2");
    QSeries epm1 = eisenstein_qexp(static_cast<long>(mod.p) - 1, mod, n);
    QSeries epp1 = eisenstein_qexp(static_cast<long>(mod.p) + 1, mod, n);
    QSeries a = series_scale(serre_derivative(epm1), 12 % mod.pm);
    a = series_mul(a, series_pow(epm1, 2 * mod.p - 1));
    QSeries b = series_scale(series_mul(series_pow(epp1, mod.p),
                                        series_pow(epm1, mod.p - 2)),
                             mod.p);
    QSeries r = series_add(a, b);
    QSeries e2 = eisenstein_qexp(2, mod, n);
    if (!agree_to(r, e2, n))
        throw std::logic_error("e2_representative_mod_p2: congruence check failed");
    long w = 2 + 2 * static_cast<long>(mod.p) * (static_cast<long>(mod.p) - 1);
    r.set_weight_tag(w);
    return r;
}

} // namespace thetacycle
