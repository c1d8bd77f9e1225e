#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetacycle/modulus.hpp"
#include "thetacycle/rational.hpp"

#include <random>

using namespace thetacycle;

TEST_CASE("modulus construction accepts primes p >= 5 and rejects the rest") {
    Modulus m(13, 2);
    CHECK(m.p == 13);
    CHECK(m.m == 2);
    CHECK(m.pm == 169);
    CHECK(Modulus(5, 1).pm == 5);

    CHECK_THROWS(Modulus(2, 1));
    CHECK_THROWS(Modulus(3, 2));
    CHECK_THROWS(Modulus(4, 1));
    CHECK_THROWS(Modulus(9, 1));
    CHECK_THROWS(Modulus(91, 1));   // 7 * 13
    CHECK_THROWS(Modulus(13, 0));
}

TEST_CASE("modulus rejects p^m that would overflow the word-sized residue arithmetic") {
    CHECK(Modulus(65521, 2).pm == 65521ull * 65521ull);
    CHECK_THROWS(Modulus(65537, 2));
    CHECK_THROWS(Modulus(5, 14));
}

TEST_CASE("reduced drops the exponent") {
    Modulus m(7, 2);
    CHECK(m.reduced().pm == 7);
    CHECK(m.reduced(0) == m);
    CHECK_THROWS(m.reduced(2));
    CHECK(Modulus(7, 2).reduced(1).m == 1);
}

TEST_CASE("is_prime_u64 agrees with trial division on small integers") {
    auto naive = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = 0; n < 2000; ++n)
        CHECK(is_prime_u64(n) == naive(n));
    CHECK(is_prime_u64(2147483647ull));        // 2^31 - 1
    CHECK_FALSE(is_prime_u64(2147483647ull * 2147483647ull));
}

TEST_CASE("residue arithmetic matches wide-integer computation") {
    Modulus mod(13, 2);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        std::uint64_t a = rng() % mod.pm;
        std::uint64_t b = rng() % mod.pm;
        CHECK(add_mod(a, b, mod) == (a + b) % mod.pm);
        CHECK(sub_mod(a, b, mod) == (a + mod.pm - b) % mod.pm);
        CHECK(mul_mod(a, b, mod) == (unsigned __int128)a * b % mod.pm);
        CHECK(add_mod(a, neg_mod(a, mod), mod) == 0);
    }
}

TEST_CASE("pow_mod matches repeated multiplication") {
    Modulus mod(7, 2);
    for (std::uint64_t a = 0; a < mod.pm; ++a) {
        std::uint64_t acc = 1 % mod.pm;
        for (unsigned e = 0; e < 8; ++e) {
            CHECK(pow_mod(a, e, mod) == acc);
            acc = mul_mod(acc, a, mod);
        }
    }
    CHECK(pow_mod(0, 0, mod) == 1);
}

TEST_CASE("inv_mod inverts every unit and rejects every non-unit") {
    Modulus mod(5, 2);
    for (std::uint64_t a = 0; a < mod.pm; ++a) {
        if (a % 5 == 0) {
            CHECK_THROWS(inv_mod(a, mod));
        } else {
            CHECK(mul_mod(a, inv_mod(a, mod), mod) == 1);
        }
    }
}

TEST_CASE("reduce_int maps negative integers into canonical residues") {
    Modulus mod(11, 1);
    CHECK(reduce_int(-1, mod) == 10);
    CHECK(reduce_int(-24, mod) == (11 - 24 % 11) % 11);
    CHECK(reduce_int(0, mod) == 0);
    CHECK(reduce_int(23, mod) == 1);
    Modulus mod2(13, 2);
    CHECK(reduce_int(-16744, mod2) == (169 - 16744 % 169) % 169);
}

TEST_CASE("residue_valuation caps at the exponent of the modulus") {
    Modulus mod(5, 2);
    CHECK(residue_valuation(1, mod) == 0);
    CHECK(residue_valuation(10, mod) == 1);
    CHECK(residue_valuation(0, mod) == 2);
    CHECK(residue_valuation(3, mod) == 0);
    CHECK(residue_valuation(20, mod) == 1);
}

TEST_CASE("ValUnit round-trips residues and multiplies like the ring") {
    Modulus mod(7, 2);
    for (std::uint64_t a = 0; a < mod.pm; ++a) {
        ValUnit va = vu_of_residue(a, mod);
        CHECK(va.residue(mod) == a);
        if (a == 0) CHECK(va.is_zero(mod));
    }
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        std::uint64_t a = rng() % mod.pm, b = rng() % mod.pm;
        ValUnit prod = vu_mul(vu_of_residue(a, mod), vu_of_residue(b, mod), mod);
        CHECK(prod.residue(mod) == mul_mod(a, b, mod));
    }
}

TEST_CASE("vu_div undoes vu_mul including the p-divisible case") {
    Modulus mod(5, 2);
    ValUnit ten = vu_of_integer(10, mod);   // v = 1
    ValUnit two = vu_of_integer(2, mod);
    ValUnit five = vu_div(ten, two, mod);
    CHECK(five.v == 1);
    CHECK(five.residue(mod) == 5);
    // 50 / 10 = 5 needs the valuation bookkeeping: both sides divisible by 5.
    ValUnit twenty = vu_of_integer(20, mod);
    CHECK(vu_div(twenty, ten, mod).residue(mod) == 2);
    // 50 = 2 * 5^2 saturates the valuation and is the exact zero mod 25
    CHECK(vu_of_integer(50, mod).is_zero(mod));
    CHECK(vu_div(ValUnit::zero(mod), two, mod).is_zero(mod));
}

TEST_CASE("factorial_vu matches the exact big-integer factorial") {
    Modulus mod(5, 2);
    BigInt fact = 1;
    for (long n = 0; n <= 60; ++n) {
        if (n > 0) fact *= n;
        ValUnit vu = factorial_vu(n, mod);
        BigInt rem = fact % BigInt(mod.pm);
        CHECK(vu.residue(mod) == rem.convert_to<std::uint64_t>());
        // Legendre's valuation, capped like residue_valuation.
        long v = 0;
        for (BigInt q = 5; q <= n; q *= 5) v += (long)(n / q.convert_to<long>());
        CHECK(vu.v == std::min<unsigned>((unsigned)v, mod.m));
    }
}

TEST_CASE("binomial_vu matches exact binomial coefficients") {
    Modulus mod(7, 2);
    for (long n = 0; n <= 40; ++n) {
        BigInt c = 1;
        for (long r = 0; r <= n; ++r) {
            BigInt rem = c % BigInt(mod.pm);
            CHECK(binomial_vu(n, r, mod).residue(mod) == rem.convert_to<std::uint64_t>());
            c = c * (n - r) / (r + 1);
        }
    }
    CHECK(binomial_vu(5, 9, mod).is_zero(mod));
}

TEST_CASE("rising_ratio_vu computes hi!/lo! and vanishes when the range crosses zero") {
    Modulus mod(5, 2);
    for (long lo = 0; lo <= 12; ++lo) {
        BigInt prod = 1;
        for (long hi = lo; hi <= 20; ++hi) {
            if (hi > lo) prod *= hi;
            BigInt rem = prod % BigInt(mod.pm);
            CHECK(rising_ratio_vu(hi, lo, mod).residue(mod) == rem.convert_to<std::uint64_t>());
        }
    }
    // (k-1+i)! / (k-1+j)! with k = 0: the product sweeps through zero.
    CHECK(rising_ratio_vu(3, -1, mod).is_zero(mod));
    CHECK_THROWS(rising_ratio_vu(0, -2, mod));   // would need a negative factor
    CHECK_THROWS(rising_ratio_vu(2, 5, mod));
}

TEST_CASE("valuation-unit pairs keep p-divisible factorial ratios exact") {
    // 10!/8! = 90 has valuation 1 mod 5^2; the plain residues of 10! and 8!
    // are both 0, so only the split representation recovers it.
    Modulus mod(5, 2);
    ValUnit r = rising_ratio_vu(10, 8, mod);
    CHECK(r.v == 1);
    CHECK(r.residue(mod) == 90 % 25);
}
