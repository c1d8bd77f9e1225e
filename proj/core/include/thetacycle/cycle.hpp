#pragma once

#include "thetacycle/filtration.hpp"

#include <string>

namespace thetacycle {

// Provenance of the value at one index: established exactly by a theorem,
// bounded by a theorem (value still computed), or engine-computed only.
enum class TheoremStatus { Exact, Bound, Engine };
const char* to_string(TheoremStatus s);

// Shape of the weight filtration sequence at an index: low (strict local
// minimum), rise (next value higher), fall (next value lower), plateau (no
// change going out), boundary (sequence ends, or next to a vanished index).
// The final index of a full-period report is judged against its wrapped
// successor one period back.
enum class PointClass { Low, Rise, Fall, Plateau, Boundary };
const char* to_string(PointClass c);

struct FiltrationRecord {
    long i = 0;
    long n = 0;          // floor(i / p)
    long i_prime = 0;    // i - n p
    bool zero = false;   // theta^i f == 0 mod p^m (weights meaningless)
    long weight_filt = 0;
    long factor_filt = 0;
    unsigned p_divided = 0;   // filtration taken of theta^i f / p^v over p^(m-v)
    TheoremStatus status = TheoremStatus::Engine;
    PointClass classification = PointClass::Boundary;
    bool exceptional = false;
};

struct CycleCoverage {
    long exact = 0;
    long bounded = 0;    // exact or theorem-bound
    long total = 0;
    double exact_fraction = 0.0;
    double bounded_fraction = 0.0;
};

struct CycleReport {
    Modulus mod{};
    long k = 0;
    std::string form;
    long i_max = 0;
    bool theorem_mode = false;
    bool ordinary = false;
    long periodic_from = 0;   // indices >= this repeat with period (p-1)p^(m-1)
    std::vector<long> exceptional_indices;
    CycleCoverage coverage;   // tallied over 0 <= i <= min(i_max, p(p-1))
    std::vector<FiltrationRecord> records;
};

struct CycleOptions {
    long i_max = -1;            // default (p-1) p^(m-1) + m - 1
    bool theorem_mode = true;   // require 0 < k < p and omega_p(f) = k
    std::size_t guard = 5;
    std::size_t precision_floor = 0;   // extra lower bound on working precision
};

// Weight and factor filtrations of theta^i f mod p^m for 0 <= i <= i_max,
// m in {1, 2}.  Each step applies theta to a minimal-weight representative of
// the previous index, so working weights stay near the filtration instead of
// growing by p^2 per step.
CycleReport compute_cycle(const FormExpr& f, const Modulus& mod,
                          const CycleOptions& opts = {});

// Recomputes classifications from the weight sequence; compute_cycle already
// applies it.
CycleReport classify_points(CycleReport report);

// Both characterizations of a U_p-congruence: a(np) == 0 mod p for all n,
// and theta^(p-1) f == f mod p.  They agree whenever omega_p(f) = k with
// 0 < k < p; outside those hypotheses (say f constant mod p) they can differ.
struct OrdinarityCriteria {
    bool up_vanishing = false;
    bool theta_fixed_point = false;
};
OrdinarityCriteria ordinarity_criteria(const FormExpr& f, std::uint64_t p);

// a(np) != 0 mod p for some n; the zero form counts as non-ordinary.
bool is_ordinary(const FormExpr& f, std::uint64_t p);

// i is exceptional when n = floor(i/p) satisfies 1 <= n < p,
// np <= i <= np + p - k + 1, and i^2 + (k-1)i - n^2 == 0 mod p.
bool is_exceptional(std::uint64_t p, long k, long i);
std::vector<long> exceptional_indices(std::uint64_t p, long k, long i_max);

// Coverage of index i by the exact-value and bound theorems for a weight-k
// form satisfying the theorem-mode hypotheses.
TheoremStatus theorem_status(std::uint64_t p, long k, unsigned m, long i);

} // namespace thetacycle
