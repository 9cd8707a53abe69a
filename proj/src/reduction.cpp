#include "gmmds/reduction.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include <fmt/format.h>

#include "gmmds/error.hpp"
#include "gmmds/wpoly.hpp"

namespace gmmds {

namespace {

std::uint32_t top_polys(const RootFamily& F) {
    std::uint32_t mask = 0;
    for (int i = 0; i < F.m(); ++i) {
        if (F.sets()[static_cast<std::size_t>(i)].size() == F.m() - 1) mask |= 1U << i;
    }
    return mask;
}

int tops_containing(const RootFamily& F, std::uint32_t tops, int var) {
    int count = 0;
    for (int i = 0; i < F.m(); ++i) {
        if (((tops >> i) & 1U) && F.sets()[static_cast<std::size_t>(i)].contains(var)) ++count;
    }
    return count;
}

int polys_containing(const RootFamily& F, int var) {
    int count = 0;
    for (auto s : F.sets()) count += s.contains(var) ? 1 : 0;
    return count;
}

RootFamily remove_root(const RootFamily& F, int var) {
    std::vector<RootSet> sets = F.sets();
    const RootSet gone(std::uint64_t{1} << (var - 1));
    for (auto& s : sets) s = s.without(gone);
    return RootFamily(F.n(), std::move(sets));
}

// Highest-scoring removable roots of S: those lying in the most degree-(m-1)
// polynomials. Ascending variable order.
std::vector<int> best_betas(const RootFamily& F, RootSet S) {
    const std::uint32_t tops = top_polys(F);
    std::vector<int> best;
    int best_score = -1;
    for (int beta : removable_elements(F, S).elements()) {
        const int score = tops_containing(F, tops, beta);
        if (score > best_score) {
            best_score = score;
            best.clear();
        }
        if (score == best_score) best.push_back(beta);
    }
    return best;
}

ReductionRound make_round(const RootFamily& before, const RSSubset& S, int beta, const RootFamily& after, int index) {
    ReductionRound round;
    round.round = index;
    round.broken = S;
    round.beta = beta;
    round.n_beta = polys_containing(before, beta);
    round.degrees_after = after.degrees();
    return round;
}

std::pair<int, int> identical_tops(const RootFamily& F) {
    const std::uint32_t tops = top_polys(F);
    for (int i = 0; i < F.m(); ++i) {
        if (!((tops >> i) & 1U)) continue;
        for (int j = i + 1; j < F.m(); ++j) {
            if (((tops >> j) & 1U) && F.sets()[static_cast<std::size_t>(i)] == F.sets()[static_cast<std::size_t>(j)]) {
                return {i + 1, j + 1};
            }
        }
    }
    return {0, 0};
}

[[noreturn]] void throw_stuck(const RootFamily& F) {
    auto [a, b] = identical_tops(F);
    if (a == 0) throw Error(ErrorKind::NotAcceptable, "no strongly reducible subset but no identical pair either");
    throw StuckGrpError(a, b);
}

ReductionTrace finish(const RootFamily& initial, std::vector<ReductionRound> rounds, const RootFamily& final) {
    const int m = initial.m();
    int survivor = 0;
    for (int i = 1; i <= m; ++i) {
        if (final.degree(i) == m - 1) {
            if (survivor != 0) throw Error(ErrorKind::NotAcceptable, "more than one polynomial of degree m-1 remains");
            survivor = i;
        }
    }
    if (survivor == 0) throw Error(ErrorKind::NotAcceptable, "no polynomial of degree m-1 remains");

    ReductionTrace trace{initial, std::move(rounds), RootSet{}, final, {}, TraceStatus::Accepted, survivor, {}};
    std::uint64_t removed = 0;
    for (const auto& r : trace.rounds) {
        removed |= std::uint64_t{1} << (r.beta - 1);
        trace.n_R[r.beta] = r.n_beta;
    }
    trace.R = RootSet(removed);
    for (int i = 1; i <= m; ++i) {
        if (i != survivor) trace.order.push_back(i);
    }
    trace.order.push_back(survivor);
    return trace;
}

void require_top(const RootFamily& F) {
    if (F.max_degree() != F.m() - 1) {
        throw Error(ErrorKind::InvalidInput, fmt::format("reduction needs a polynomial of degree m-1 = {}", F.m() - 1));
    }
}

}  // namespace

RootSet removable_elements(const RootFamily& F, RootSet S) {
    const std::uint32_t tops = top_polys(F);
    const int total = std::popcount(tops);
    std::uint64_t out = 0;
    for (int beta : S.elements()) {
        const int c = tops_containing(F, tops, beta);
        if (c >= 1 && c < total) out |= std::uint64_t{1} << (beta - 1);
    }
    return RootSet(out);
}

bool weakly_reducible(const RootFamily& F, RootSet S) {
    if (S.empty()) return false;
    const std::uint32_t tops = top_polys(F);
    bool inside_top = false;
    for (int i = 0; i < F.m() && !inside_top; ++i) {
        inside_top = ((tops >> i) & 1U) && S.subset_of(F.sets()[static_cast<std::size_t>(i)]);
    }
    return inside_top && !removable_elements(F, S).empty();
}

bool weakly_reducible(const RootFamily& F, const RSSubset& S) { return weakly_reducible(F, S.elements); }

std::vector<RSSubset> strongly_reducible_subsets(const RootFamily& F, std::uint32_t scope) {
    std::vector<RSSubset> weak;
    for (const auto& S : all_rs_subsets(F, scope)) {
        if (weakly_reducible(F, S)) weak.push_back(S);
    }
    if (weak.empty()) return weak;
    const RSSubset best = *std::max_element(weak.begin(), weak.end(),
                                            [](const RSSubset& a, const RSSubset& b) { return higher_order(a, b) < 0; });
    std::erase_if(weak, [&](const RSSubset& S) { return higher_order(S, best) != 0; });
    return weak;
}

std::vector<RSSubset> strongly_reducible_subsets(const RootFamily& F) {
    return strongly_reducible_subsets(F, all_polys(F.m()));
}

ReductionTrace reduce(const RootFamily& F, TieBreak policy) {
    require_top(F);
    RootFamily current = F;
    std::vector<ReductionRound> rounds;
    while (std::popcount(top_polys(current)) > 1) {
        const auto strong = strongly_reducible_subsets(current);
        if (strong.empty()) throw_stuck(current);
        const RSSubset& S = policy == TieBreak::Lex ? strong.front() : strong.back();
        const auto betas = best_betas(current, S.elements);
        const int beta = policy == TieBreak::Lex ? betas.front() : betas.back();
        RootFamily next = remove_root(current, beta);
        rounds.push_back(make_round(current, S, beta, next, static_cast<int>(rounds.size()) + 1));
        current = std::move(next);
    }
    return finish(F, std::move(rounds), current);
}

ReductionRuns reduce_all(const RootFamily& F) {
    require_top(F);
    ReductionRuns runs;
    std::unordered_set<std::uint64_t> visited;   // removed sets already expanded
    std::unordered_set<std::uint64_t> finished;  // terminal R already recorded
    std::vector<ReductionRound> path;

    std::function<void(const RootFamily&, std::uint64_t)> walk = [&](const RootFamily& current, std::uint64_t removed) {
        if (!visited.insert(removed).second) return;
        if (std::popcount(top_polys(current)) <= 1) {
            if (finished.insert(removed).second) runs.accepted.push_back(finish(F, path, current));
            return;
        }
        const auto strong = strongly_reducible_subsets(current);
        if (strong.empty()) {
            ++runs.stuck;
            return;
        }
        std::unordered_set<int> tried;
        for (const auto& S : strong) {
            for (int beta : best_betas(current, S.elements)) {
                if (!tried.insert(beta).second) continue;
                RootFamily next = remove_root(current, beta);
                path.push_back(make_round(current, S, beta, next, static_cast<int>(path.size()) + 1));
                walk(next, removed | (std::uint64_t{1} << (beta - 1)));
                path.pop_back();
            }
        }
    };
    walk(F, 0);
    return runs;
}

DerivativeIdentity derivative_identity_check(const RootFamily& F, const ReductionTrace& trace, bool exact,
                                             std::uint64_t seed) {
    if (trace.status != TraceStatus::Accepted) {
        throw Error(ErrorKind::InvalidInput, "derivative_identity_check needs an accepted trace");
    }
    if (!(trace.initial == F)) throw Error(ErrorKind::InvalidInput, "trace belongs to a different family");
    const int m = F.m(), n = F.n();

    const MultiPoly W = w_polynomial(F);
    const MultiPoly W_reduced = w_polynomial(trace.final);
    int sign_exponent = 0;
    std::int64_t factorials = 1;
    MultiPoly hasse = W;
    for (const auto& [r, n_r] : trace.n_R) {
        hasse = hasse_derivative(hasse, r, n_r);
        sign_exponent += n_r;
        for (int i = 2; i <= n_r; ++i) factorials *= i;
    }
    const MultiPoly rhs = W_reduced.scaled(sign_exponent % 2 == 0 ? 1 : -1);

    DerivativeIdentity result;
    if (exact) {
        result.derivative_identity = hasse == rhs;
        MultiPoly ordinary = W;
        for (const auto& [r, n_r] : trace.n_R) ordinary = derivative(ordinary, r, n_r);
        result.factorial_identity = ordinary == rhs.scaled(factorials);
    } else {
        result.derivative_identity = probably_zero(hasse - rhs, 3, seed);
    }

    // Survivor last: its leading coefficient is 1 and every other reduced
    // polynomial has degree < m-1, so the last row of the matrix is (0..0 1).
    std::vector<RootSet> permuted;
    for (int idx : trace.order) permuted.push_back(trace.final.set(idx));
    const MultiPoly W_permuted = w_polynomial(permuted, m, n);
    permuted.pop_back();
    const MultiPoly W_minor = w_polynomial(permuted, m - 1, n);
    result.minor_identity = exact ? W_permuted == W_minor : probably_zero(W_permuted - W_minor, 3, seed ^ 0x9E37U);
    return result;
}

}  // namespace gmmds
