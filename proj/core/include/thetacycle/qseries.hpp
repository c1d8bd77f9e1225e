#pragma once

#include "thetacycle/modulus.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace thetacycle {

// Truncated q-expansion over Z/p^m: coefficients of q^0 .. q^{N-1} where N is
// the precision.  weight_tag, when present, records the weight of a known
// holomorphic form whose reduction mod p^m this series is; quasimodular marks
// the one exception (E_2), whose tag is its quasi-modular weight.
class QSeries {
public:
    QSeries() = default;
    QSeries(Modulus mod, std::vector<std::uint64_t> coeffs)
        : mod_(mod), c_(std::move(coeffs)) { normalize(); }

    static QSeries zero(const Modulus& mod, std::size_t n);
    static QSeries constant(const Modulus& mod, std::size_t n, std::uint64_t value);

    const Modulus& modulus() const { return mod_; }
    std::size_t precision() const { return c_.size(); }
    bool empty() const { return c_.empty(); }

    std::uint64_t operator[](std::size_t i) const { return c_[i]; }
    std::uint64_t& coeff(std::size_t i) { return c_[i]; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::vector<std::uint64_t>& coeffs() { return c_; }

    std::optional<long> weight_tag() const { return wtag_; }
    bool quasimodular() const { return quasi_; }
    void clear_weight_tag() { wtag_.reset(); quasi_ = false; }
    // Caller asserts the series is the reduction of a weight-w form.
    void set_weight_tag(long w, bool quasi = false);

    QSeries truncated(std::size_t n) const;
    bool is_zero() const;

private:
    void normalize();

    Modulus mod_{};
    std::vector<std::uint64_t> c_;
    std::optional<long> wtag_;
    bool quasi_ = false;
};

// All binary operations reduce to the smaller precision of their operands and
// throw std::domain_error on modulus mismatch or empty operands.
QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_sub(const QSeries& a, const QSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);
// As series_mul but truncated to out_prec (<= min precision) coefficients.
QSeries series_mul_prec(const QSeries& a, const QSeries& b, std::size_t out_prec);
QSeries series_scale(const QSeries& a, std::uint64_t c);
QSeries series_pow(const QSeries& a, std::uint64_t e);
// Requires a unit constant term.
QSeries series_invert(const QSeries& a);
// theta = q d/dq: multiplies the n-th coefficient by n.  Clears the weight tag.
QSeries theta_apply(const QSeries& a);
// Smallest p-adic valuation over all coefficients, capped at m (m for 0).
unsigned p_valuation(const QSeries& a);
// Divides every coefficient by p^v; requires p_valuation >= v.  The result
// lives over p^(m-v).
QSeries strip_p_power(const QSeries& a, unsigned v);
// Reduction to the modulus p^(m-v).
QSeries reduce_to(const QSeries& a, const Modulus& smaller);

bool agree_to(const QSeries& a, const QSeries& b, std::size_t n);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return series_add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return series_sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

} // namespace thetacycle
