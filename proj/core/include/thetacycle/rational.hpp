#pragma once

#include "thetacycle/modulus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace thetacycle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bernoulli number B_k (B_2 = 1/6, B_4 = -1/30, ...) computed exactly.
// Requires k even, k >= 2, k <= max_index.  Memoized process-wide.
Rational bernoulli(unsigned k, unsigned max_index = 4096);

// Residue of a rational whose denominator is prime to p.  Throws
// std::domain_error when p divides the denominator.
std::uint64_t reduce_rational(const Rational& q, const Modulus& mod);

std::uint64_t reduce_bigint(const BigInt& v, const Modulus& mod);

} // namespace thetacycle
