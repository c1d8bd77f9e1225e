#pragma once

#include "thetacycle/toolkit.hpp"

#include <optional>

namespace thetacycle {

// Result of a filtration computation for a series s of tagged weight W.
//
// weight filtration: value = least w with s congruent to the reduction of
// some g in M_w; witness_exponent = 0 and witness = g.
// factor filtration: value = least w admitting s == E_{p-1}^n * g with g in
// M_w; witness holds g and witness_exponent the number n of E-factors pulled
// out below the weight filtration (so weight = value + n(p-1) on the ladder).
//
// zero: s vanished identically mod p^m.  p_divided = v > 0: s was divisible
// by p^v; the filtration is that of s/p^v over p^(m-v), and the witness lives
// over that smaller modulus.
struct FiltrationOutcome {
    bool zero = false;
    long value = 0;
    unsigned p_divided = 0;
    long witness_exponent = 0;
    QSeries witness;
    // Coordinates of the witness in the unitriangular monomial basis of
    // M_value over p^(m - p_divided); regenerates it at any precision.
    std::vector<std::uint64_t> witness_coords;
    bool exact = true;
};

// Smallest integer >= factor_value congruent to weight_class mod
// p^(m-1)(p-1): the weight filtration determined by a factor filtration.
long weight_from_factor(long factor_value, long weight_class, const Modulus& mod);

// Filtration search bound to one modulus.  Sturm-type test precision is
// dim M_W + guard coefficients: a weight-W form vanishing to that order mod
// p^m vanishes identically (the integral monomial basis is unitriangular),
// so every verdict below is exact, never a truncation artifact.
class FiltrationContext {
public:
    explicit FiltrationContext(Modulus mod, std::size_t guard = 5);

    const Modulus& modulus() const { return mod_; }
    std::size_t guard() const { return guard_; }
    // Test precision for comparisons at tagged weight W.
    std::size_t test_precision(long W) const;

    // Toolkit over p^m_eff (1 <= m_eff <= m), built lazily.
    SeriesToolkit& toolkit(unsigned m_eff);

    // Does s (tagged weight W) agree with E_{p-1}^e * g for some g in M_w,
    // where e = (W-w)/(p-1)?  On success returns the coordinates of g in the
    // unitriangular monomial basis of M_w; the echelon coordinates of g are
    // its first dim M_w coefficients.  Zero input yields the all-zero
    // coordinate vector; if p^v || s the coordinates describe s/p^v
    // over p^(m-v).
    std::optional<std::vector<std::uint64_t>>
    membership_coords(const QSeries& s, long w);

    // Reduction of the weight-w form with the given monomial coordinates,
    // at n coefficients over p^m_eff.
    QSeries form_from_coords(long w, const std::vector<std::uint64_t>& coords,
                             std::size_t n, unsigned m_eff);

    // Witness that s is congruent to the reduction of a form in M_w, if so.
    std::optional<QSeries> membership(const QSeries& s, long w);

    FiltrationOutcome weight_filtration(const QSeries& s);
    FiltrationOutcome factor_filtration(const QSeries& s);
    // Both at once (the factor search extends the weight search).
    std::pair<FiltrationOutcome, FiltrationOutcome> filtration_pair(const QSeries& s);

private:
    struct Prepared {
        QSeries stripped;        // s / p^v over p^(m-v)
        unsigned v = 0;
        long W = 0;
        std::size_t P = 0;
        bool zero = false;
    };
    Prepared prepare(const QSeries& s);
    std::optional<std::vector<std::uint64_t>>
    coords_at(SeriesToolkit& tk, const QSeries& s0, long W, long w, std::size_t P);
    FiltrationOutcome weight_search(const Prepared& pre,
                                    std::vector<std::uint64_t>* coords_out);

    Modulus mod_;
    std::size_t guard_;
    std::vector<std::unique_ptr<SeriesToolkit>> toolkits_;   // index m_eff - 1
};

} // namespace thetacycle
