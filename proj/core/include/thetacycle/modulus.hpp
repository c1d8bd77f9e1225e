#pragma once

#include <cstdint>
#include <stdexcept>

namespace thetacycle {

// Prime power modulus p^m with p >= 5 prime.  All residues are stored as
// least nonnegative representatives in [0, p^m).  p^m is capped below 2^32
// so that products of residues fit in 64 bits.
struct Modulus {
    std::uint64_t p = 0;
    unsigned m = 0;
    std::uint64_t pm = 0;   // p^m

    Modulus() = default;
    Modulus(std::uint64_t p_, unsigned m_);

    bool operator==(const Modulus&) const = default;

    // Modulus p^(m-v), same prime.  Requires v < m.
    Modulus reduced(unsigned v = 1) const;
};

bool is_prime_u64(std::uint64_t n);

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, const Modulus& mod) {
    std::uint64_t s = a + b;
    return s >= mod.pm ? s - mod.pm : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, const Modulus& mod) {
    return a >= b ? a - b : a + mod.pm - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const Modulus& mod) {
    return (a * b) % mod.pm;   // safe: residues < 2^32
}

inline std::uint64_t neg_mod(std::uint64_t a, const Modulus& mod) {
    return a == 0 ? 0 : mod.pm - a;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, const Modulus& mod);

// Inverse of a unit (p does not divide a).  Throws std::domain_error otherwise.
std::uint64_t inv_mod(std::uint64_t a, const Modulus& mod);

// Reduction of a signed integer.
std::uint64_t reduce_int(long long v, const Modulus& mod);

// p-adic valuation of a residue, capped at m; returns m for 0.
unsigned residue_valuation(std::uint64_t a, const Modulus& mod);

// Scalar in p-adic (valuation, unit) form: value = p^v * u with p not
// dividing u, or the exact zero (v >= m by convention).  Keeping the
// valuation separate lets quantities like (i+k-1)!/(j+k-1)! be formed even
// though the full factorials vanish mod p^m.
struct ValUnit {
    unsigned v = 0;
    std::uint64_t u = 1;

    static ValUnit zero(const Modulus& mod) { return {mod.m, 0}; }
    bool is_zero(const Modulus& mod) const { return v >= mod.m; }
    std::uint64_t residue(const Modulus& mod) const;
};

ValUnit vu_of_residue(std::uint64_t a, const Modulus& mod);
ValUnit vu_of_integer(std::uint64_t n, const Modulus& mod);   // exact integer input
ValUnit vu_mul(const ValUnit& a, const ValUnit& b, const Modulus& mod);
// a / b for exact quotients (requires b.v <= a.v or a zero).
ValUnit vu_div(const ValUnit& a, const ValUnit& b, const Modulus& mod);

// (v_p(n!), unit part of n! mod p^m).
ValUnit factorial_vu(std::uint64_t n, const Modulus& mod);
// Binomial coefficient C(n, r) as a ValUnit (exact integer, may be p-divisible).
ValUnit binomial_vu(std::uint64_t n, std::uint64_t r, const Modulus& mod);
// Product n * (n-1) * ... * (r+1) = n!/r!, as consecutive-integer product.
// Zero if the range contains 0 (occurs only when r > n is rejected, or n >= 0 >= r+1).
ValUnit rising_ratio_vu(long long hi, long long lo, const Modulus& mod);

} // namespace thetacycle
