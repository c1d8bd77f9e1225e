#pragma once

#include "thetacycle/serre.hpp"

#include <memory>

namespace thetacycle {

// Per-modulus workspace holding the standard series and power tables used by
// the filtration search.  All series are kept at a shared session precision;
// requests beyond it trigger a rebuild.  Not thread-safe: use one toolkit per
// thread.
class SeriesToolkit {
public:
    explicit SeriesToolkit(Modulus mod, std::size_t initial_precision = 64);

    const Modulus& modulus() const { return mod_; }
    std::size_t session_precision() const { return prec_; }
    // Grows (never shrinks) the session precision.
    void ensure_precision(std::size_t n);

    QSeries eisenstein(long k, std::size_t n);
    QSeries delta(std::size_t n);
    QSeries e2_rep(std::size_t n);          // m = 2 only
    QSeries form_series(const FormExpr& f, std::size_t n);

    // Each power costs at most one series product thanks to a two-level
    // (64-ary) table of cached powers.
    QSeries e4_power(long a);
    QSeries inv_e4_power(long a);
    QSeries e6_power(int b);                // b in {0,1}
    QSeries inv_e6_power(int b);
    // E_{p-1}^(+-e) reduced by E_{p-1}^(p^(m-1)) == 1 mod p^m, so e is taken
    // mod p^(m-1).
    QSeries epm1_power(long e);
    QSeries inv_epm1_power(long e);

    // (Delta * E4^-3)^j, the step ratio of the weight-w monomial basis
    // m_j = Delta^j E4^(a0-3j) E6^b.  Returns a reference into the table;
    // it stays valid until a later j or a precision growth, so either use it
    // immediately or call r_power(j_max) once up front.
    const QSeries& r_power(std::size_t j);

    std::uint64_t inv12() const { return inv12_; }

private:
    struct PowTable {
        QSeries base;
        QSeries b64;                  // base^64
        std::vector<QSeries> small;   // base^0 .. base^63
        std::vector<QSeries> big;     // base^(64t)
    };

    QSeries pow_from(PowTable& t, long e);
    void rebuild();
    QSeries cached_eisenstein(long k);

    Modulus mod_;
    std::size_t prec_ = 0;
    std::uint64_t inv12_ = 0;

    std::vector<std::pair<long, QSeries>> eis_;
    QSeries delta_, e2rep_;
    bool has_e2rep_ = false;
    std::vector<QSeries> rpow_;
    PowTable e4pow_, inve4pow_, e6pow_, inve6pow_;
    std::vector<QSeries> epm1pow_, invepm1pow_;   // indexed by e mod p^(m-1)
};

} // namespace thetacycle
