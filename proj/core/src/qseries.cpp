#include "thetacycle/qseries.hpp"

#include <algorithm>

namespace thetacycle {

namespace {

void require_compatible(const QSeries& a, const QSeries& b) {
    if (a.modulus() != b.modulus())
        throw std::domain_error("series: modulus mismatch");
    if (a.empty() || b.empty())
        throw std::domain_error("series: empty operand");
}

} // namespace

void QSeries::normalize() {
    if (mod_.pm == 0) throw std::domain_error("series: uninitialized modulus");
    for (auto& x : c_) x %= mod_.pm;
}

QSeries QSeries::zero(const Modulus& mod, std::size_t n) {
    return QSeries(mod, std::vector<std::uint64_t>(n, 0));
}

QSeries QSeries::constant(const Modulus& mod, std::size_t n, std::uint64_t value) {
    if (n == 0) throw std::domain_error("series: zero precision");
    std::vector<std::uint64_t> c(n, 0);
    c[0] = value % mod.pm;
    return QSeries(mod, std::move(c));
}

void QSeries::set_weight_tag(long w, bool quasi) {
    if (w < 0 || w % 2 != 0)
        throw std::domain_error("series: weight tag must be a nonnegative even integer");
    wtag_ = w;
    quasi_ = quasi;
}

QSeries QSeries::truncated(std::size_t n) const {
    if (n > c_.size())
        throw std::domain_error("series: truncation beyond precision");
    QSeries r(mod_, std::vector<std::uint64_t>(c_.begin(), c_.begin() + n));
    r.wtag_ = wtag_;
    r.quasi_ = quasi_;
    return r;
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

QSeries series_add(const QSeries& a, const QSeries& b) {
    require_compatible(a, b);
    std::size_t n = std::min(a.precision(), b.precision());
    std::vector<std::uint64_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = add_mod(a[i], b[i], a.modulus());
    QSeries r(a.modulus(), std::move(c));
    if (a.weight_tag() && b.weight_tag() && *a.weight_tag() == *b.weight_tag()
        && a.quasimodular() == b.quasimodular())
        r.set_weight_tag(*a.weight_tag(), a.quasimodular());
    return r;
}

QSeries series_sub(const QSeries& a, const QSeries& b) {
    require_compatible(a, b);
    std::size_t n = std::min(a.precision(), b.precision());
    std::vector<std::uint64_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = sub_mod(a[i], b[i], a.modulus());
    QSeries r(a.modulus(), std::move(c));
    if (a.weight_tag() && b.weight_tag() && *a.weight_tag() == *b.weight_tag()
        && a.quasimodular() == b.quasimodular())
        r.set_weight_tag(*a.weight_tag(), a.quasimodular());
    return r;
}

QSeries series_mul_prec(const QSeries& a, const QSeries& b, std::size_t n) {
    require_compatible(a, b);
    if (n > std::min(a.precision(), b.precision()))
        throw std::domain_error("series: product precision exceeds operands");
    const Modulus& mod = a.modulus();
    std::vector<std::uint64_t> c(n, 0);
    std::uint64_t unit = mod.pm - 1;          // < 2^32, so unit^2 fits in u64
    std::uint64_t u2 = unit * unit;
    std::uint64_t cap = u2 ? ~0ull / u2 : ~0ull;
    if (n <= cap) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j <= i; ++j) acc += a[j] * b[i - j];
            c[i] = acc % mod.pm;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            unsigned __int128 acc = 0;
            for (std::size_t j = 0; j <= i; ++j)
                acc += static_cast<unsigned __int128>(a[j]) * b[i - j];
            c[i] = static_cast<std::uint64_t>(acc % mod.pm);
        }
    }
    QSeries r(mod, std::move(c));
    if (a.weight_tag() && b.weight_tag())
        r.set_weight_tag(*a.weight_tag() + *b.weight_tag(),
                         a.quasimodular() || b.quasimodular());
    return r;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    return series_mul_prec(a, b, std::min(a.precision(), b.precision()));
}

QSeries series_scale(const QSeries& a, std::uint64_t s) {
    if (a.empty()) throw std::domain_error("series: empty operand");
    s %= a.modulus().pm;
    std::vector<std::uint64_t> c(a.precision());
    for (std::size_t i = 0; i < a.precision(); ++i) c[i] = mul_mod(a[i], s, a.modulus());
    QSeries r(a.modulus(), std::move(c));
    if (a.weight_tag()) r.set_weight_tag(*a.weight_tag(), a.quasimodular());
    return r;
}

QSeries series_pow(const QSeries& a, std::uint64_t e) {
    if (a.empty()) throw std::domain_error("series: empty operand");
    QSeries r = QSeries::constant(a.modulus(), a.precision(), 1);
    QSeries b = a;
    std::uint64_t e0 = e;
    while (e) {
        if (e & 1) r = series_mul(r, b);
        e >>= 1;
        if (e) b = series_mul(b, b);
    }
    if (a.weight_tag()) {
        long w = static_cast<long>(*a.weight_tag() * static_cast<long long>(e0));
        r.set_weight_tag(w, e0 > 0 && a.quasimodular());
    } else if (e0 > 0) {
        r.clear_weight_tag();
    }
    return r;
}

QSeries series_invert(const QSeries& a) {
    if (a.empty()) throw std::domain_error("series: empty operand");
    const Modulus& mod = a.modulus();
    std::uint64_t a0inv = inv_mod(a[0], mod);   // throws unless unit
    std::size_t n = a.precision();
    std::vector<std::uint64_t> r(n, 0);
    r[0] = a0inv;
    for (std::size_t i = 1; i < n; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 1; j <= i; ++j)
            acc += static_cast<unsigned __int128>(a[j]) * r[i - j];
        std::uint64_t s = static_cast<std::uint64_t>(acc % mod.pm);
        r[i] = mul_mod(neg_mod(s, mod), a0inv, mod);
    }
    return QSeries(mod, std::move(r));
}

QSeries theta_apply(const QSeries& a) {
    if (a.empty()) throw std::domain_error("series: empty operand");
    const Modulus& mod = a.modulus();
    std::vector<std::uint64_t> c(a.precision());
    for (std::size_t i = 0; i < a.precision(); ++i)
        c[i] = mul_mod(a[i], i % mod.pm, mod);
    return QSeries(mod, std::move(c));
}

unsigned p_valuation(const QSeries& a) {
    const Modulus& mod = a.modulus();
    unsigned v = mod.m;
    for (std::size_t i = 0; i < a.precision() && v > 0; ++i)
        if (a[i] != 0) v = std::min(v, residue_valuation(a[i], mod));
    return v;
}

QSeries strip_p_power(const QSeries& a, unsigned v) {
    if (v == 0) return a;
    if (p_valuation(a) < v)
        throw std::domain_error("series: p-power larger than valuation");
    Modulus small = a.modulus().reduced(v);
    std::uint64_t pv = 1;
    for (unsigned i = 0; i < v; ++i) pv *= a.modulus().p;
    std::vector<std::uint64_t> c(a.precision());
    for (std::size_t i = 0; i < a.precision(); ++i) c[i] = a[i] / pv;
    QSeries r(small, std::move(c));
    if (a.weight_tag()) r.set_weight_tag(*a.weight_tag(), a.quasimodular());
    return r;
}

QSeries reduce_to(const QSeries& a, const Modulus& smaller) {
    if (smaller.p != a.modulus().p || smaller.m > a.modulus().m)
        throw std::domain_error("series: invalid reduction target");
    std::vector<std::uint64_t> c(a.precision());
    for (std::size_t i = 0; i < a.precision(); ++i) c[i] = a[i] % smaller.pm;
    QSeries r(smaller, std::move(c));
    if (a.weight_tag()) r.set_weight_tag(*a.weight_tag(), a.quasimodular());
    return r;
}

bool agree_to(const QSeries& a, const QSeries& b, std::size_t n) {
    if (a.modulus() != b.modulus()) return false;
    if (a.precision() < n || b.precision() < n)
        throw std::domain_error("series: comparison beyond precision");
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace thetacycle
