#pragma once

// Conjecture and lemma harness: enumerate or sample root families, classify
// each by (W == 0, GRP), and check the reduction-process lemmas.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmmds/reduction.hpp"
#include "gmmds/rng.hpp"
#include "gmmds/structures.hpp"

namespace gmmds {

/// Sorted (nondecreasing) degree profiles of m polynomials whose top degree is m-1.
std::vector<std::vector<int>> all_profiles(int m);

/// Every family over n variables with N_i of size profile[i]. In canonical
/// mode one representative per orbit under variable relabeling and
/// permutation of equal-degree polynomials, in a fixed order.
/// Throws InvalidInput when a degree exceeds m-1, no degree equals m-1, or
/// n is outside [max degree, m(m-1)].
std::vector<RootFamily> enumerate_families(int m, int n, const std::vector<int>& profile, bool canonical);

/// Orbit key used by canonical enumeration; equal keys mean equivalent families.
std::vector<std::uint32_t> canonical_key(const RootFamily& F);
RootFamily canonical_form(const RootFamily& F);

/// Support matrices m x n satisfying the MDS condition, one per class under
/// row and column permutations, in a fixed order.
std::vector<SupportMatrix> enumerate_mds_supports(int m, int n, int threads = 1);

/// Random support matrix: n drawn from [n_lo, n_hi], each row with a uniform
/// number of zeros in [0, m-1] at uniform positions, redrawn until the MDS
/// condition holds.
SupportMatrix random_mds_support(int m, int n_lo, int n_hi, Rng& rng);

enum class Classification {
    ZeroGrp,        // W == 0 and GRP: consistent
    NonzeroGnrp,    // W != 0 and GNRP: consistent
    NonzeroGrp,     // converse anomaly: GRP yet W != 0
    Counterexample, // W == 0 without GRP
};

const char* to_string(Classification c);

struct ConjectureCheck {
    bool zero = false;
    bool grp = false;
    Classification classification = Classification::NonzeroGnrp;
    /// Set when the randomized test said zero and the exact recheck disagreed.
    bool false_alarm = false;
};

/// exact: symbolic W. Otherwise a 3-trial randomized test through det(T);
/// a randomized "zero" without GRP is always rechecked symbolically.
ConjectureCheck check_conjecture(const RootFamily& F, bool exact = true, std::uint64_t seed = 0);

enum class SuiteMode { Exhaustive, Random };

struct SuiteScope {
    int m = 2;
    int n = 2;       // exhaustive: variables available; random: upper bound
    int n_min = 0;   // random: lower bound on n (0 means n)
    std::vector<int> profile;  // empty: every profile
    SuiteMode mode = SuiteMode::Exhaustive;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    bool fast = false;
    std::uint64_t budget = 0;  // max families, 0 = unlimited
    int threads = 1;
};

struct ProfileTally {
    std::vector<int> profile;
    std::uint64_t tested = 0;
};

struct VerifyReport {
    SuiteScope scope;
    std::uint64_t tested = 0;
    std::uint64_t zero_count = 0;
    std::uint64_t grp_count = 0;
    std::uint64_t zero_grp = 0;
    std::uint64_t nonzero_gnrp = 0;
    std::uint64_t nonzero_grp = 0;
    std::uint64_t counterexample_count = 0;
    std::uint64_t false_alarms = 0;
    std::vector<RootFamily> counterexamples;      // sorted canonically
    std::vector<RootFamily> converse_anomalies;   // sorted canonically
    std::vector<ProfileTally> per_profile;
    bool budget_exceeded = false;
    double runtime_seconds = 0.0;

    bool ok() const noexcept { return counterexample_count == 0; }
};

VerifyReport run_suite(const SuiteScope& scope);

/// Random family with the given profile over n variables.
RootFamily random_family(int n, const std::vector<int>& profile, Rng& rng);

struct RpEquivalenceReport {
    int m = 0, n = 0;
    std::uint64_t checked = 0;
    std::uint64_t mds_true = 0;
    bool exhaustive = true;
    std::vector<SupportMatrix> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// mds_condition(M) == !RP(N(M)) over matrices whose rows all have support
/// n-m+1. Exhaustive when the count is within `exhaustive_limit`, else that
/// many seeded samples.
RpEquivalenceReport check_rp_equivalence(int m, int n, std::uint64_t exhaustive_limit, std::uint64_t seed = 0);

struct LemmaReport {
    std::uint64_t families = 0;
    std::uint64_t gnrp_families = 0;
    std::uint64_t runs = 0;
    std::uint64_t oversized_subset = 0;    // GNRP family with an (r,s)-subset, r+s > m
    std::uint64_t tight_without_top = 0;   // r+s = m subset of {P_i}* with no member of degree m-1
    std::uint64_t tight_not_weak = 0;      // r+s = m subset of {P_i}* that is not weakly reducible
    std::uint64_t overlapping_strong = 0;  // two strongly reducible r+s = m subsets sharing a member
    std::uint64_t unbroken_strong = 0;     // strongly reducible r+s = m subset disjoint from R
    std::uint64_t stuck = 0;            // GNRP inputs that got stuck
    std::uint64_t too_many_rounds = 0;  // more rounds than sum of degrees
    bool unbroken_checked = false;
    std::vector<std::string> details;   // first violations, with traces

    std::uint64_t violations() const noexcept {
        return oversized_subset + tight_without_top + tight_not_weak + overlapping_strong + unbroken_strong + stuck +
               too_many_rounds;
    }
};

/// True for m <= 4 with any degrees and for m = 5 with all degrees 4.
bool unbroken_regime(const RootFamily& F);

/// Checks the reduction lemmas on one GNRP family across every run of the
/// process; adds to `report`.
void check_lemmas_on_family(const RootFamily& F, LemmaReport& report);

/// Exhaustive mode: canonical families on n variables with `profile`.
/// Random mode: `samples` GNRP families, n drawn from [m, m(m-1)] and the
/// profile drawn from all_profiles(m) when `profile` is empty.
LemmaReport check_reduction_lemmas(int m, const std::vector<int>& profile, SuiteMode mode, int n,
                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace gmmds
