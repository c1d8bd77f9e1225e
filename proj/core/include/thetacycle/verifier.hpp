#pragma once

#include "thetacycle/cycle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thetacycle {

enum class Verdict { Pass, Fail, Inapplicable };
const char* to_string(Verdict v);

// One checked instance of a published claim: the expected value or bound,
// what the engine computed, and whether the claim's hypotheses held.
struct CheckOutcome {
    std::string claim;       // stable id, e.g. "thmA.weight.middle"
    std::string instance;    // parameters, e.g. "form=Delta p=17 m=2 i=7"
    std::string statement;   // human-readable expectation
    std::string expected;
    std::string computed;
    Verdict verdict = Verdict::Pass;
    std::string note;        // branch taken, hypothesis failure, ...
};

// Single-line JSON encoding, suitable for a machine ledger.
std::string outcome_json_line(const CheckOutcome& o);

struct CheckSummary {
    std::string claim_set;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t inapplicable = 0;
};

CheckSummary summarize(const std::string& claim_set,
                       const std::vector<CheckOutcome>& outcomes);

// Verifies the published theta-cycle statements against engine-computed
// filtrations of one form at one prime.  Claims whose hypotheses fail for
// the given form report Inapplicable rather than coercing the input.
class Verifier {
public:
    Verifier(std::uint64_t p, FormExpr form, std::size_t guard = 5);

    // prop2.2 thmA corB thmC corD lemma2.4 bounds identities all
    static const std::vector<std::string>& claim_sets();
    std::vector<CheckOutcome> run(const std::string& claim_set);

    std::vector<CheckOutcome> check_prop_jochnowitz();
    std::vector<CheckOutcome> check_theorem_A();
    std::vector<CheckOutcome> check_corollary_B();
    std::vector<CheckOutcome> check_theorem_C();
    std::vector<CheckOutcome> check_corollary_D();
    // n ranges over 0..n_max (default p + 2, covering a multiple of p).
    std::vector<CheckOutcome> check_e2_powers_lemma(long n_max = -1);
    // i_max default p(p-1) + 4 so the record-level periodicity and the
    // census over a full period are both in range.
    std::vector<CheckOutcome> check_bounds(long i_max = -1);
    std::vector<CheckOutcome> check_identities();

    // Cached engine report mod p^m, grown as needed.
    const CycleReport& cycle_report(unsigned m, long i_max);

private:
    struct Hypotheses {
        bool zero_mod_p = false;
        long omega_p = 0;           // meaningful when !zero_mod_p
        bool weight_in_range = false;   // 0 < k < p
        bool filtration_matches = false;   // omega_p(f) == k
        bool ordinary = false;
        bool satisfied() const {
            return !zero_mod_p && weight_in_range && filtration_matches;
        }
    };

    const Hypotheses& hypotheses();
    std::string hypothesis_note() const;
    std::string tag(long i = -1, long n = -1) const;
    CheckOutcome inapplicable(std::string claim, std::string statement) const;

    std::uint64_t p_;
    FormExpr form_;
    std::string form_str_;
    long k_;
    std::size_t guard_;
    std::optional<Hypotheses> hyp_;
    std::optional<CycleReport> rep1_, rep2_;
};

} // namespace thetacycle
