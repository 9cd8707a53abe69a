#pragma once

// Degree-reduction process on a root family: repeatedly break a
// highest-order weakly reducible (r,s)-subset by deleting one of its
// removable roots from every N_i, until a single polynomial of degree m-1 is
// left.

#include <cstdint>
#include <map>
#include <vector>

#include "gmmds/multipoly.hpp"
#include "gmmds/structures.hpp"

namespace gmmds {

/// Roots of S that lie in some but not all degree-(m-1) polynomials.
RootSet removable_elements(const RootFamily& F, RootSet S);

/// S sits inside a degree-(m-1) polynomial and has a removable element.
bool weakly_reducible(const RootFamily& F, RootSet S);
bool weakly_reducible(const RootFamily& F, const RSSubset& S);

/// Weakly reducible (r,s)-subsets of maximal order. Membership r is counted
/// within `scope`; reducibility is judged on the whole family.
std::vector<RSSubset> strongly_reducible_subsets(const RootFamily& F, std::uint32_t scope);
std::vector<RSSubset> strongly_reducible_subsets(const RootFamily& F);

/// Resolves the arbitrary choices of the process.
enum class TieBreak {
    Lex,         // lowest subset in element order, then lowest-index root
    ReverseLex,  // highest subset, then highest-index root
};

enum class TraceStatus { Accepted, StuckGRP };

struct ReductionRound {
    int round = 0;          // 1-based
    RSSubset broken;        // r counted over the whole family at that round
    int beta = 0;           // removed variable index
    int n_beta = 0;         // polynomials containing beta when it was removed
    std::vector<int> degrees_after;
};

struct ReductionTrace {
    RootFamily initial;
    std::vector<ReductionRound> rounds;
    RootSet R;
    RootFamily final;
    std::map<int, int> n_R;  // removed root -> n_r
    TraceStatus status = TraceStatus::Accepted;
    int survivor = 0;  // 1-based index of the remaining degree-(m-1) polynomial
    /// order[k] = original index placed at position k+1; survivor last.
    std::vector<int> order;
};

/// Runs the process with one deterministic tie-break policy.
/// Throws StuckGrpError when no strongly reducible subset remains while two
/// or more polynomials have degree m-1, InvalidInput when no polynomial has
/// degree m-1, NotAcceptable if the terminal degrees break acceptability.
ReductionTrace reduce(const RootFamily& F, TieBreak policy = TieBreak::Lex);

struct ReductionRuns {
    /// One trace per distinct reachable reduction set R, in discovery order.
    std::vector<ReductionTrace> accepted;
    /// Branches that ended with identical degree-(m-1) polynomials.
    int stuck = 0;
};

/// Explores every admissible sequence of (S, beta) choices.
ReductionRuns reduce_all(const RootFamily& F);

struct DerivativeIdentity {
    /// D^(n_R) W(P) == (-1)^{sum n_r} W(P~) with D the divided (Hasse) derivative.
    bool derivative_identity = false;
    /// Same identity with ordinary derivatives carries the factor prod n_r!.
    /// Only evaluated in exact mode.
    bool factorial_identity = false;
    /// W(P~) with the survivor moved last equals the (m-1)x(m-1) W(P~_1..P~_{m-1}).
    bool minor_identity = false;

    bool holds() const noexcept { return derivative_identity && minor_identity; }
};

/// Symbolic check of the derivative identity behind degree reduction. With
/// exact = false the differences are tested by probably_zero instead.
/// Throws InvalidInput for a trace that is not accepted.
DerivativeIdentity derivative_identity_check(const RootFamily& F, const ReductionTrace& trace, bool exact = true,
                                              std::uint64_t seed = 1);

}  // namespace gmmds
