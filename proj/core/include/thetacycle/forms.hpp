#pragma once

#include "thetacycle/qseries.hpp"
#include "thetacycle/rational.hpp"

#include <string>
#include <vector>

namespace thetacycle {

// dim M_w for level one: 0 for w negative, odd, or w = 2; 1 for w = 0; else
// floor(w/12) + (w mod 12 == 2 ? 0 : 1).
long dim_modular_forms(long w);

// Exponents (a0, b) of the leading monomial E4^a0 * E6^b in weight w:
// b in {0,1} fixed by w mod 4, a0 = (w - 6b)/4.  The weight-w monomial basis
// is m_j = Delta^j * E4^(a0-3j) * E6^b for 0 <= j < dim M_w; m_j = q^j + ...
struct MonomialShape {
    long a0 = 0;
    int b = 0;
};
MonomialShape monomial_shape(long w);

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
// k = 2 is allowed and returns the quasi-modular series (tag 2, flagged).
// Requires k even, k >= 2, and -2k/B_k p-integral (automatic for p >= 5 and
// the weights used here; asserted).
QSeries eisenstein_qexp(long k, const Modulus& mod, std::size_t n);

enum class Generator { E4, E6, Delta };

QSeries generator_qexp(Generator g, const Modulus& mod, std::size_t n);

// Rational linear combination of monomials E4^a * E6^b * Delta^d, all of one
// weight 4a + 6b + 12d.
struct FormExpr {
    struct Term {
        Rational coeff;
        unsigned a = 0, b = 0, d = 0;
        long weight() const { return 4L * a + 6L * b + 12L * d; }
    };
    std::vector<Term> terms;

    long weight() const;          // throws if terms are empty or weights mix
    void validate() const;
    std::string to_string() const;

    static FormExpr delta();
    static FormExpr eisenstein4();
    static FormExpr eisenstein6();
};

// Grammar: sum of signed terms `c * E4^a * E6^b * Delta^d`, `c` an integer or
// fraction like 3/2; `*` between factors, `^` for exponents; E4, E6, Delta
// (case-insensitive, D allowed for Delta).  Example: "3/2*E4^2*E6 + Delta".
FormExpr parse_form_expr(const std::string& text);

// q-expansion of the expression mod p^m to n coefficients, tagged with its
// weight.  Throws when a coefficient denominator is divisible by p.
QSeries eval_form_expr(const FormExpr& f, const Modulus& mod, std::size_t n);

// Row-reduced basis of the reduction of M_w: basis[i] = q^i + O(q^dim) with
// basis[i][j] = delta_ij for j < dim.  Over Z/p^m the elimination divides
// only by unit pivots (the monomial basis is unitriangular).
struct EchelonBasis {
    long weight = 0;
    Modulus mod{};
    std::size_t precision = 0;
    std::vector<QSeries> rows;

    long dim() const { return static_cast<long>(rows.size()); }
};

// Requires n >= dim M_w ("insufficient precision for basis" otherwise).
EchelonBasis echelon_basis(long w, const Modulus& mod, std::size_t n);

} // namespace thetacycle
