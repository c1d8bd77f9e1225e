#include "thetacycle/modulus.hpp"

namespace thetacycle {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Modulus::Modulus(std::uint64_t p_, unsigned m_) : p(p_), m(m_) {
    if (p < 5 || !is_prime_u64(p))
        throw std::domain_error("modulus: p must be a prime >= 5");
    if (m < 1)
        throw std::domain_error("modulus: exponent m must be >= 1");
    pm = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (pm > 0xFFFFFFFFull / p)
            throw std::domain_error("modulus: p^m exceeds 2^32");
        pm *= p;
    }
}

Modulus Modulus::reduced(unsigned v) const {
    if (v >= m) throw std::domain_error("modulus: cannot reduce exponent below 1");
    return Modulus(p, m - v);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, const Modulus& mod) {
    std::uint64_t r = 1 % mod.pm, b = base % mod.pm;
    while (e) {
        if (e & 1) r = mul_mod(r, b, mod);
        b = mul_mod(b, b, mod);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, const Modulus& mod) {
    a %= mod.pm;
    if (a % mod.p == 0)
        throw std::domain_error("inv_mod: residue is not a unit");
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(mod.pm), nr = static_cast<long long>(a);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<long long>(mod.pm);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_int(long long v, const Modulus& mod) {
    long long r = v % static_cast<long long>(mod.pm);
    if (r < 0) r += static_cast<long long>(mod.pm);
    return static_cast<std::uint64_t>(r);
}

unsigned residue_valuation(std::uint64_t a, const Modulus& mod) {
    if (a % mod.pm == 0) return mod.m;
    a %= mod.pm;
    unsigned v = 0;
    while (a % mod.p == 0) { a /= mod.p; ++v; }
    return v;
}

std::uint64_t ValUnit::residue(const Modulus& mod) const {
    if (is_zero(mod)) return 0;
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < v; ++i) pk *= mod.p;
    return mul_mod(pk % mod.pm, u, mod);
}

ValUnit vu_of_residue(std::uint64_t a, const Modulus& mod) {
    a %= mod.pm;
    if (a == 0) return ValUnit::zero(mod);
    unsigned v = 0;
    while (a % mod.p == 0) { a /= mod.p; ++v; }
    return {v, a};
}

ValUnit vu_of_integer(std::uint64_t n, const Modulus& mod) {
    if (n == 0) return ValUnit::zero(mod);
    unsigned v = 0;
    while (n % mod.p == 0) { n /= mod.p; ++v; }
    if (v >= mod.m) return ValUnit::zero(mod);
    return {v, n % mod.pm};
}

ValUnit vu_mul(const ValUnit& a, const ValUnit& b, const Modulus& mod) {
    if (a.is_zero(mod) || b.is_zero(mod)) return ValUnit::zero(mod);
    unsigned v = a.v + b.v;
    if (v >= mod.m) return ValUnit::zero(mod);
    return {v, mul_mod(a.u, b.u, mod)};
}

ValUnit vu_div(const ValUnit& a, const ValUnit& b, const Modulus& mod) {
    if (b.is_zero(mod))
        throw std::domain_error("vu_div: division by zero scalar");
    if (a.is_zero(mod)) return ValUnit::zero(mod);
    if (b.v > a.v)
        throw std::domain_error("vu_div: quotient is not p-integral");
    return {a.v - b.v, mul_mod(a.u, inv_mod(b.u, mod), mod)};
}

ValUnit factorial_vu(std::uint64_t n, const Modulus& mod) {
    // n! = p^{floor(n/p)} * floor(n/p)! * prod_{j<=n, p∤j} j, applied iteratively.
    unsigned long long v = 0;
    std::uint64_t u = 1;
    while (n > 0) {
        for (std::uint64_t j = 2; j <= n; ++j)
            if (j % mod.p != 0) u = mul_mod(u, j % mod.pm, mod);
        n /= mod.p;
        v += n;
    }
    return {static_cast<unsigned>(v >= mod.m ? mod.m : v), u};
}

ValUnit binomial_vu(std::uint64_t n, std::uint64_t r, const Modulus& mod) {
    if (r > n) return ValUnit::zero(mod);
    ValUnit a = factorial_vu(n, mod);
    ValUnit b = factorial_vu(r, mod);
    ValUnit c = factorial_vu(n - r, mod);
    if (a.is_zero(mod)) {
        // valuation saturated at m; recompute the true valuation exactly
        unsigned long long va = 0, vb = 0, vc = 0;
        for (std::uint64_t q = mod.p; q <= n; q *= mod.p) {
            va += n / q; vb += r / q; vc += (n - r) / q;
            if (q > n / mod.p) break;
        }
        unsigned long long v = va - vb - vc;
        if (v >= mod.m) return ValUnit::zero(mod);
        // unit parts still valid mod p^m
        std::uint64_t u = mul_mod(a.u, inv_mod(mul_mod(b.u, c.u, mod), mod), mod);
        return {static_cast<unsigned>(v), u};
    }
    return vu_div(a, vu_mul(b, c, mod), mod);
}

ValUnit rising_ratio_vu(long long hi, long long lo, const Modulus& mod) {
    if (hi < lo)
        throw std::domain_error("rising_ratio_vu: empty descending range");
    ValUnit r{0, 1};
    for (long long t = lo + 1; t <= hi; ++t) {
        if (t == 0) return ValUnit::zero(mod);
        if (t < 0)
            throw std::domain_error("rising_ratio_vu: negative factor");
        r = vu_mul(r, vu_of_integer(static_cast<std::uint64_t>(t), mod), mod);
        if (r.is_zero(mod)) return r;
    }
    return r;
}

} // namespace thetacycle
