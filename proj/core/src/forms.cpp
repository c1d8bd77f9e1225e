#include "thetacycle/forms.hpp"

#include <cctype>
#include <sstream>

namespace thetacycle {

long dim_modular_forms(long w) {
    if (w < 0 || w % 2 != 0) return 0;
    if (w == 0) return 1;
    if (w == 2) return 0;
    return w / 12 + (w % 12 == 2 ? 0 : 1);
}

MonomialShape monomial_shape(long w) {
    if (w < 0 || w % 2 != 0)
        throw std::domain_error("monomial_shape: weight must be even and nonnegative");
    int b = (w % 4 == 0) ? 0 : 1;
    return {(w - 6 * b) / 4, b};
}

QSeries eisenstein_qexp(long k, const Modulus& mod, std::size_t n) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("eisenstein_qexp: weight must be even and >= 2");
    if (static_cast<unsigned long>(k) > 2 * (mod.p + 1))
        throw std::domain_error("eisenstein_qexp: weight above 2(p+1) bound");
    if (n == 0)
        throw std::domain_error("eisenstein_qexp: zero precision");
    Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
    std::uint64_t cred = reduce_rational(c, mod);   // p-integrality assert
    std::vector<std::uint64_t> coeffs(n, 0);
    coeffs[0] = 1;
    // sigma_{k-1} by sieving divisors
    for (std::size_t d = 1; d < n; ++d) {
        std::uint64_t e = mul_mod(cred, pow_mod(d % mod.pm, k - 1, mod), mod);
        for (std::size_t t = d; t < n; t += d)
            coeffs[t] = add_mod(coeffs[t], e, mod);
    }
    QSeries r(mod, std::move(coeffs));
    r.set_weight_tag(k, k == 2);
    return r;
}

QSeries generator_qexp(Generator g, const Modulus& mod, std::size_t n) {
    switch (g) {
    case Generator::E4: return eisenstein_qexp(4, mod, n);
    case Generator::E6: return eisenstein_qexp(6, mod, n);
    case Generator::Delta: break;
    }
    if (n == 0) throw std::domain_error("generator_qexp: zero precision");
    // Delta = q * prod (1-q^j)^24; the product via the pentagonal number
    // expansion of prod (1-q^j), then three squarings and one extra product.
    std::vector<std::uint64_t> eta(n, 0);
    eta[0] = 1;
    for (long j = 1;; ++j) {
        long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
        if (g1 >= static_cast<long>(n) && g2 >= static_cast<long>(n)) break;
        std::uint64_t s = (j % 2 == 1) ? mod.pm - 1 : 1;
        if (g1 < static_cast<long>(n)) eta[g1] = add_mod(eta[g1], s, mod);
        if (g2 < static_cast<long>(n)) eta[g2] = add_mod(eta[g2], s, mod);
    }
    QSeries e(mod, std::move(eta));
    QSeries e2 = series_mul(e, e);
    QSeries e4 = series_mul(e2, e2);
    QSeries e8 = series_mul(e4, e4);
    QSeries e16 = series_mul(e8, e8);
    QSeries e24 = series_mul(e16, e8);
    std::vector<std::uint64_t> d(n, 0);
    for (std::size_t i = 1; i < n; ++i) d[i] = e24[i - 1];
    QSeries r(mod, std::move(d));
    r.set_weight_tag(12);
    return r;
}

long FormExpr::weight() const {
    validate();
    return terms.front().weight();
}

void FormExpr::validate() const {
    if (terms.empty())
        throw std::domain_error("form expression: no terms");
    long w = terms.front().weight();
    for (const auto& t : terms) {
        if (t.weight() != w)
            throw std::domain_error("form expression: mixed weights");
        if (t.coeff == 0)
            throw std::domain_error("form expression: zero coefficient term");
    }
}

std::string FormExpr::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) { out << "-"; c = -c; }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool has_monomial = t.a || t.b || t.d;
        if (c != 1 || !has_monomial) {
            out << c.str();
            if (has_monomial) out << "*";
        }
        bool star = false;
        auto emit = [&](const char* name, unsigned e) {
            if (!e) return;
            if (star) out << "*";
            out << name;
            if (e > 1) out << "^" << e;
            star = true;
        };
        emit("E4", t.a);
        emit("E6", t.b);
        emit("Delta", t.d);
    }
    return out.str();
}

FormExpr FormExpr::delta() { return {{{Rational(1), 0, 0, 1}}}; }
FormExpr FormExpr::eisenstein4() { return {{{Rational(1), 1, 0, 0}}}; }
FormExpr FormExpr::eisenstein6() { return {{{Rational(1), 0, 1, 0}}}; }

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool done() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    char take() { skip_ws(); return s[i++]; }
    [[noreturn]] void fail(const std::string& why) {
        throw std::domain_error("form expression: " + why + " at position " + std::to_string(i));
    }
};

BigInt parse_uint(Cursor& c) {
    c.skip_ws();
    if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        c.fail("expected a number");
    BigInt v = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        v = v * 10 + (c.s[c.i++] - '0');
    return v;
}

unsigned parse_exponent(Cursor& c) {
    if (c.peek() != '^') return 1;
    c.take();
    BigInt e = parse_uint(c);
    if (e > 64) c.fail("exponent too large");
    return e.convert_to<unsigned>();
}

// one factor: number, fraction, or generator name with optional exponent
void parse_factor(Cursor& c, FormExpr::Term& t, bool& saw_coeff) {
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        BigInt num = parse_uint(c);
        BigInt den = 1;
        if (c.peek() == '/') {
            c.take();
            den = parse_uint(c);
            if (den == 0) c.fail("zero denominator");
        }
        t.coeff *= Rational(num, den);
        saw_coeff = true;
        return;
    }
    char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up == 'E') {
        c.take();
        BigInt w = parse_uint(c);
        unsigned e = parse_exponent(c);
        if (w == 4) t.a += e;
        else if (w == 6) t.b += e;
        else c.fail("only E4 and E6 generate the ring");
        return;
    }
    if (up == 'D') {
        c.take();
        static const char* rest = "elta";
        for (const char* r = rest; *r; ++r) {
            if (c.i < c.s.size()
                && std::tolower(static_cast<unsigned char>(c.s[c.i])) == *r)
                ++c.i;
            else if (r != rest)
                c.fail("unknown name (expected Delta)");
            else
                break;
        }
        t.d += parse_exponent(c);
        return;
    }
    c.fail("expected a coefficient, E4, E6, or Delta");
}

} // namespace

FormExpr parse_form_expr(const std::string& text) {
    Cursor c{text};
    FormExpr f;
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            c.take();
            sign = ch == '-' ? -1 : 1;
        } else if (!first) {
            c.fail("expected + or - between terms");
        }
        FormExpr::Term t;
        t.coeff = sign;
        bool saw_coeff = false;
        parse_factor(c, t, saw_coeff);
        while (c.peek() == '*') {
            c.take();
            parse_factor(c, t, saw_coeff);
        }
        if (t.coeff != 0) f.terms.push_back(t);
        first = false;
    }
    if (f.terms.empty())
        throw std::domain_error("form expression: empty input");
    f.validate();
    return f;
}

QSeries eval_form_expr(const FormExpr& f, const Modulus& mod, std::size_t n) {
    f.validate();
    if (n == 0) throw std::domain_error("eval_form_expr: zero precision");
    long w = f.weight();
    QSeries e4 = generator_qexp(Generator::E4, mod, n);
    QSeries e6 = generator_qexp(Generator::E6, mod, n);
    QSeries delta = generator_qexp(Generator::Delta, mod, n);
    QSeries acc = QSeries::zero(mod, n);
    for (const auto& t : f.terms) {
        QSeries term = QSeries::constant(mod, n, reduce_rational(t.coeff, mod));
        if (t.a) term = series_mul(term, series_pow(e4, t.a));
        if (t.b) term = series_mul(term, series_pow(e6, t.b));
        if (t.d) term = series_mul(term, series_pow(delta, t.d));
        acc = series_add(acc, term);
    }
    acc.set_weight_tag(w);
    return acc;
}

EchelonBasis echelon_basis(long w, const Modulus& mod, std::size_t n) {
    long d = dim_modular_forms(w);
    if (d == 0)
        throw std::domain_error("echelon_basis: weight with trivial space");
    if (n < static_cast<std::size_t>(d))
        throw std::domain_error("echelon_basis: insufficient precision for basis");
    MonomialShape sh = monomial_shape(w);
    QSeries e4 = generator_qexp(Generator::E4, mod, n);
    QSeries e6 = generator_qexp(Generator::E6, mod, n);
    QSeries delta = generator_qexp(Generator::Delta, mod, n);
    std::vector<QSeries> rows;
    rows.reserve(d);
    QSeries lead = series_pow(e4, sh.a0);
    if (sh.b) lead = series_mul(lead, e6);
    // ratio Delta * E4^-3 converts m_j into m_{j+1}
    QSeries ratio = series_mul(delta, series_pow(series_invert(e4), 3));
    for (long j = 0; j < d; ++j) {
        rows.push_back(lead);
        if (j + 1 < d) lead = series_mul(lead, ratio);
    }
    // unitriangular: rows[j] = q^j + O(q^(j+1)); clear entries above each pivot
    for (long j = 1; j < d; ++j) {
        for (long i = 0; i < j; ++i) {
            std::uint64_t c = rows[i][j];
            if (c == 0) continue;
            rows[i] = series_sub(rows[i], series_scale(rows[j], c));
        }
    }
    for (long j = 0; j < d; ++j) {
        rows[j].set_weight_tag(w);
        for (long t = 0; t < d; ++t)
            if (rows[j][t] != (t == j ? 1u : 0u))
                throw std::logic_error("echelon_basis: pivot structure violated");
    }
    return {w, mod, n, std::move(rows)};
}

} // namespace thetacycle
