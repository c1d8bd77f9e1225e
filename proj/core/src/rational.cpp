#include "thetacycle/rational.hpp"

#include <mutex>
#include <vector>

namespace thetacycle {

namespace {

std::mutex bern_mutex;
// bernoulli_all[n] = B_n for all n >= 0 computed so far (odd entries 0 past B_1).
std::vector<Rational> bernoulli_all = {Rational(1)};

// Extends the table through index k using
// sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
void extend_bernoulli(unsigned k) {
    for (unsigned n = static_cast<unsigned>(bernoulli_all.size()); n <= k; ++n) {
        BigInt binom = 1;   // C(n+1, j), updated incrementally
        Rational acc = 0;
        for (unsigned j = 0; j < n; ++j) {
            acc += Rational(binom) * bernoulli_all[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        // binom now equals C(n+1, n) = n+1
        bernoulli_all.push_back(-acc / Rational(binom));
    }
}

} // namespace

Rational bernoulli(unsigned k, unsigned max_index) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("bernoulli: index must be even and >= 2");
    if (k > max_index)
        throw std::domain_error("bernoulli: index above configured bound");
    std::lock_guard<std::mutex> lock(bern_mutex);
    extend_bernoulli(k);
    return bernoulli_all[k];
}

std::uint64_t reduce_bigint(const BigInt& v, const Modulus& mod) {
    BigInt r = v % BigInt(mod.pm);
    if (r < 0) r += BigInt(mod.pm);
    return r.convert_to<std::uint64_t>();
}

std::uint64_t reduce_rational(const Rational& q, const Modulus& mod) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den % BigInt(mod.p) == 0)
        throw std::domain_error("reduce_rational: denominator divisible by p");
    std::uint64_t n = reduce_bigint(num, mod);
    std::uint64_t d = reduce_bigint(den, mod);
    return mul_mod(n, inv_mod(d, mod), mod);
}

} // namespace thetacycle
