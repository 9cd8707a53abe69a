#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gmmds/error.hpp"
#include "gmmds/reduction.hpp"
#include "gmmds/verify.hpp"
#include "gmmds/wpoly.hpp"
#include "oracles.hpp"

using namespace gmmds;

namespace {

RootFamily fam(int n, const std::vector<std::vector<int>>& sets) { return RootFamily::from_lists(n, sets); }

const RootFamily triangle = fam(3, {{1, 2}, {1, 3}, {2, 3}});

RootFamily random_gnrp(Rng& rng, int m) {
    const auto profiles = all_profiles(m);
    while (true) {
        const auto& p = profiles[rng.below(profiles.size())];
        const auto F = oracle::family(rng, rng.between(m, m * (m - 1)), p);
        if (!has_grp(F)) return F;
    }
}

}  // namespace

TEST_CASE("removable elements") {
    CHECK(removable_elements(triangle, RootSet::of({1})) == RootSet::of({1}));
    CHECK(removable_elements(triangle, RootSet::of({1, 2})) == RootSet::of({1, 2}));
    // Root 1 lies in every degree-2 polynomial here.
    CHECK(removable_elements(fam(4, {{1, 2}, {1, 3}, {4}}), RootSet::of({1})).empty());
    CHECK(removable_elements(fam(4, {{1, 2}, {1, 3}, {4}}), RootSet::of({4})).empty());
}

TEST_CASE("weak reducibility") {
    CHECK(weakly_reducible(triangle, RootSet::of({1})));
    // {4} sits only in a polynomial of degree m-2.
    CHECK_FALSE(weakly_reducible(fam(4, {{1, 2}, {1, 3}, {4}}), RootSet::of({4})));
    // {1} lies in every degree-2 polynomial, so nothing in it is removable.
    CHECK_FALSE(weakly_reducible(fam(4, {{1, 2}, {1, 3}, {4}}), RootSet::of({1})));
}

TEST_CASE("strongly reducible subsets") {
    const auto strong = strongly_reducible_subsets(triangle);
    REQUIRE(strong.size() == 3);
    for (const auto& S : strong) {
        CHECK(S.r() == 2);
        CHECK(S.s() == 1);
    }
    // (3,1)-subset {1} beats the (2,2)-subsets of equal order.
    const auto F = fam(6, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}, {2, 3, 4}});
    const auto top = strongly_reducible_subsets(F);
    REQUIRE_FALSE(top.empty());
    for (const auto& S : top) {
        CHECK(S.r() + S.s() == 4);
        CHECK(S.r() == 3);
    }
    CHECK(strongly_reducible_subsets(fam(2, {{1}, {}, {2}})).empty());
}

TEST_CASE("triangle family under lex policy") {
    const auto t = reduce(triangle, TieBreak::Lex);
    CHECK(t.status == TraceStatus::Accepted);
    REQUIRE(t.rounds.size() == 1);
    CHECK(t.rounds[0].broken.elements == RootSet::of({1}));
    CHECK(t.rounds[0].beta == 1);
    CHECK(t.rounds[0].n_beta == 2);
    CHECK(t.rounds[0].degrees_after == std::vector<int>{1, 1, 2});
    CHECK(t.R == RootSet::of({1}));
    CHECK(t.final.degrees() == std::vector<int>{1, 1, 2});
    CHECK(t.survivor == 3);
    CHECK(t.order.back() == 3);
    CHECK(t.n_R == std::map<int, int>{{1, 2}});
    CHECK(derivative_identity_check(triangle, t).holds());
}

TEST_CASE("m = 2 with distinct roots") {
    const auto F = fam(2, {{1}, {2}});
    const auto lex = reduce(F, TieBreak::Lex);
    CHECK(lex.R == RootSet::of({1}));
    CHECK(lex.final.degrees() == std::vector<int>{0, 1});
    const auto rev = reduce(F, TieBreak::ReverseLex);
    CHECK(rev.R == RootSet::of({2}));
    CHECK(rev.final.degrees() == std::vector<int>{1, 0});
    CHECK(derivative_identity_check(F, lex).holds());
    CHECK(derivative_identity_check(F, rev).holds());
    CHECK(reduce_all(F).accepted.size() == 2);
}

TEST_CASE("identical top polynomials get stuck") {
    try {
        reduce(fam(4, {{1, 2}, {1, 2}, {3}}));
        FAIL("expected StuckGRP");
    } catch (const StuckGrpError& e) {
        CHECK(e.witness() == std::pair{1, 2});
        CHECK(e.kind() == ErrorKind::StuckGRP);
    }
    const auto runs = reduce_all(fam(4, {{1, 2}, {1, 2}, {3}}));
    CHECK(runs.accepted.empty());
    CHECK(runs.stuck > 0);
}

TEST_CASE("reduce needs a top-degree polynomial") {
    CHECK_THROWS_AS(reduce(fam(2, {{}, {}})), Error);
}

TEST_CASE("derivative_identity_check rejects a trace from another family") {
    const auto t = reduce(triangle);
    CHECK_THROWS_AS(derivative_identity_check(fam(2, {{1}, {2}}), t), Error);
}

TEST_CASE("trace invariants on random GNRP families") {
    Rng rng(67);
    for (int t = 0; t < 400; ++t) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const auto F = random_gnrp(rng, m);
        const auto degrees = F.degrees();
        const int budget = std::accumulate(degrees.begin(), degrees.end(), 0);
        for (auto policy : {TieBreak::Lex, TieBreak::ReverseLex}) {
            const auto tr = reduce(F, policy);
            CHECK(static_cast<int>(tr.rounds.size()) <= budget);
            RootSet removed;
            for (const auto& r : tr.rounds) {
                CHECK_FALSE(removed.contains(r.beta));
                removed = removed | RootSet::of({r.beta});
                CHECK(std::count(r.degrees_after.begin(), r.degrees_after.end(), m - 1) >= 1);
            }
            CHECK(removed == tr.R);
            const auto fd = tr.final.degrees();
            CHECK(std::count(fd.begin(), fd.end(), m - 1) == 1);
            CHECK(tr.final.degree(tr.survivor) == m - 1);
            // n_r at removal equals the count in the original family.
            for (auto [r, n_r] : tr.n_R) {
                int original = 0;
                for (int i = 1; i <= m; ++i) original += F.set(i).contains(r) ? 1 : 0;
                CHECK(n_r == original);
                CHECK(n_r >= 1);
            }
            std::vector<int> sorted = tr.order;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> expected(static_cast<std::size_t>(m));
            std::iota(expected.begin(), expected.end(), 1);
            CHECK(sorted == expected);
        }
    }
}

TEST_CASE("derivative identity on every run of random GNRP families") {
    Rng rng(71);
    int traces = 0;
    for (int t = 0; t < 150; ++t) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const auto F = random_gnrp(rng, m);
        for (const auto& tr : reduce_all(F).accepted) {
            const auto res = derivative_identity_check(F, tr);
            CHECK(res.derivative_identity);
            CHECK(res.factorial_identity);
            CHECK(res.minor_identity);
            ++traces;
        }
    }
    CHECK(traces >= 150);
}

TEST_CASE("ordinary derivatives carry the factorial factor") {
    // Removing root 1 from the triangle family has n_1 = 2.
    const auto tr = reduce(triangle);
    REQUIRE(tr.n_R.at(1) == 2);
    const auto W = w_polynomial(triangle);
    const auto rhs = w_polynomial(tr.final);  // sign (-1)^2
    CHECK(hasse_derivative(W, 1, 2) == rhs);
    CHECK(derivative(W, 1, 2) == rhs.scaled(2));
    CHECK_FALSE(derivative(W, 1, 2) == rhs);
    const auto res = derivative_identity_check(triangle, tr);
    CHECK(res.derivative_identity);
    CHECK(res.factorial_identity);
}

TEST_CASE("randomized lemma check on m = 5") {
    Rng rng(73);
    for (int t = 0; t < 10; ++t) {
        const auto F = random_gnrp(rng, 5);
        const auto tr = reduce(F);
        CHECK(derivative_identity_check(F, tr, false, 5).holds());
    }
}

TEST_CASE("reduction lemmas on the exhaustive m = 3 regime") {
    const auto r = check_reduction_lemmas(3, {2, 2, 2}, SuiteMode::Exhaustive, 6, 0, 1);
    CHECK(r.gnrp_families > 0);
    CHECK(r.violations() == 0);
    CHECK(r.unbroken_checked);
}

TEST_CASE("unbroken-subset regime") {
    CHECK(unbroken_regime(triangle));
    CHECK(unbroken_regime(fam(20, {{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}, {17, 18, 19, 20}})));
    CHECK_FALSE(unbroken_regime(fam(20, {{1, 2, 3}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}, {17, 18, 19, 20}})));
}
