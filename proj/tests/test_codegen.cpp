#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "gmmds/codegen.hpp"
#include "gmmds/error.hpp"
#include "gmmds/verify.hpp"
#include "gmmds/wpoly.hpp"
#include "oracles.hpp"

using namespace gmmds;

namespace {

RootFamily fam(int n, const std::vector<std::vector<int>>& sets) { return RootFamily::from_lists(n, sets); }

std::vector<FieldElem> codes(std::initializer_list<std::uint64_t> c) {
    std::vector<FieldElem> out;
    for (auto x : c) out.push_back(FieldElem{x});
    return out;
}

// First distinct tuple in lexicographic order with det(T) != 0.
std::optional<std::vector<FieldElem>> first_tuple(const RootFamily& F, const GaloisField& field) {
    std::vector<FieldElem> pts(static_cast<std::size_t>(F.n()));
    std::vector<bool> used(static_cast<std::size_t>(field.size()), false);
    std::function<bool(int)> rec = [&](int i) {
        if (i == F.n()) return det(transformation(F, field, pts)).code != 0;
        for (std::uint64_t c = 0; c < field.size(); ++c) {
            if (used[c]) continue;
            used[c] = true;
            pts[static_cast<std::size_t>(i)] = FieldElem{c};
            if (rec(i + 1)) return true;
            used[c] = false;
        }
        return false;
    };
    if (rec(0)) return pts;
    return std::nullopt;
}

}  // namespace

TEST_CASE("vandermonde examples") {
    const auto F = make_field(5);
    CHECK(vandermonde(F, codes({0, 1, 2}), 2) == FieldMatrix::from_codes(F, {{1, 1, 1}, {0, 1, 2}}));
    CHECK(vandermonde(F, codes({3}), 3) == FieldMatrix::from_codes(F, {{1}, {3}, {4}}));
    CHECK(vandermonde(F, codes({2, 4}), 1) == FieldMatrix::from_codes(F, {{1, 1}}));
    CHECK_THROWS_AS(vandermonde(F, {}, 2), Error);
}

TEST_CASE("transformation examples") {
    const auto F = make_field(5);
    const auto T = transformation(fam(3, {{3}, {1}}), F, codes({0, 1, 2}));
    CHECK(T == FieldMatrix::from_codes(F, {{3, 1}, {0, 1}}));
    CHECK(det(T) == FieldElem{3});
    CHECK(det(transformation(fam(2, {{1}, {1}}), F, codes({4, 2}))) == F.zero());
    CHECK(transformation(fam(2, {{}, {}}), F, codes({1, 2})) == FieldMatrix::from_codes(F, {{1, 0}, {1, 0}}));
    const Assignment sparse{{1, {0}}, {3, {2}}};
    CHECK(transformation(fam(3, {{3}, {1}}), F, sparse) == T);
    try {
        transformation(fam(3, {{3}, {2}}), F, sparse);
        FAIL("expected MissingAssignment");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingAssignment);
    }
}

TEST_CASE("det(T) equals W at random points") {
    for (std::uint64_t q : {7ULL, 11ULL, 16ULL, 9ULL}) {
        const auto field = make_field(q);
        Rng rng(79, q);
        for (int t = 0; t < 150; ++t) {
            const int m = 2 + static_cast<int>(rng.below(4));
            std::vector<int> profile;
            for (int i = 0; i < m; ++i) profile.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(m))));
            const auto F = oracle::family(rng, m + static_cast<int>(rng.below(5)), profile);
            std::vector<FieldElem> pts(static_cast<std::size_t>(F.n()));
            for (auto& v : pts) v = FieldElem{rng.below(q)};
            CHECK(det(transformation(F, field, pts)) == eval(w_polynomial(F), pts, field));
        }
    }
}

TEST_CASE("find_points on the worked example") {
    const auto F = make_field(5);
    const auto family = fam(3, {{3}, {1}});
    CHECK(find_points(family, F) == codes({0, 1, 2}));
    SearchOptions exhaustive;
    exhaustive.strategy = SearchStrategy::Exhaustive;
    CHECK(find_points(family, F, exhaustive) == codes({0, 1, 2}));
}

TEST_CASE("deterministic strategies return the first admissible tuple") {
    Rng rng(83);
    for (int t = 0; t < 60; ++t) {
        const int m = 2 + static_cast<int>(rng.below(2));
        const int n = m + static_cast<int>(rng.below(2));
        std::vector<int> profile(static_cast<std::size_t>(m), m - 1);
        const auto F = oracle::family(rng, n, profile);
        const auto field = make_field(next_prime_power(static_cast<std::uint64_t>(n + m - 1)));
        const auto expected = first_tuple(F, field);
        SearchOptions opt;
        opt.strategy = SearchStrategy::Exhaustive;
        if (expected) {
            CHECK(find_points(F, field, opt) == *expected);
        } else {
            CHECK_THROWS_AS(find_points(F, field, opt), NotFoundError);
        }
    }
}

TEST_CASE("every strategy yields distinct points with det(T) != 0") {
    Rng rng(89);
    for (int t = 0; t < 100; ++t) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const auto profiles = all_profiles(m);
        const auto& p = profiles[rng.below(profiles.size())];
        const auto F = oracle::family(rng, m + static_cast<int>(rng.below(4)), p);
        if (is_identically_zero(w_polynomial(F))) continue;
        const auto field = make_field(next_prime_power(static_cast<std::uint64_t>(F.n() + m - 1)));
        for (auto s : {SearchStrategy::Auto, SearchStrategy::Greedy, SearchStrategy::Exhaustive, SearchStrategy::Random}) {
            SearchOptions opt;
            opt.strategy = s;
            opt.seed = static_cast<std::uint64_t>(t);
            opt.budget = 100000;
            std::vector<FieldElem> pts;
            try {
                pts = find_points(F, field, opt);
            } catch (const NotFoundError&) {
                // Greedy may dead-end; the others must not.
                CHECK(s == SearchStrategy::Greedy);
                continue;
            }
            auto sorted = pts;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            CHECK(det(transformation(F, field, pts)).code != 0);
        }
    }
}

TEST_CASE("random strategy is reproducible by seed") {
    const auto F = fam(6, {{1, 2}, {3, 4}, {5, 6}});
    const auto field = make_field(11);
    SearchOptions opt;
    opt.strategy = SearchStrategy::Random;
    opt.seed = 99;
    CHECK(find_points(F, field, opt) == find_points(F, field, opt));
}

TEST_CASE("equal root sets are never realizable") {
    const auto field = make_field(7);
    for (auto s : {SearchStrategy::Auto, SearchStrategy::Exhaustive, SearchStrategy::Random}) {
        SearchOptions opt;
        opt.strategy = s;
        opt.budget = 2000;
        CHECK_THROWS_AS(find_points(fam(3, {{1}, {1}}), field, opt), NotFoundError);
    }
}

TEST_CASE("field size checks") {
    const auto family = fam(3, {{3}, {1}});
    try {
        find_points(family, make_field(2));
        FAIL("expected FieldTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooSmall);
    }
    // q = 3 >= n but below n+m-1 = 4.
    CHECK_THROWS_AS(find_points(family, make_field(3)), Error);
    SearchOptions loose;
    loose.allow_small_field = true;
    const auto pts = find_points(family, make_field(3), loose);
    CHECK(det(transformation(family, make_field(3), pts)).code != 0);
}

TEST_CASE("worked GF(5) instance") {
    const auto M = SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}});
    const auto inst = build_code(M, 5);
    const auto& F = inst.field;
    CHECK(inst.points == codes({0, 1, 2}));
    CHECK(inst.T == FieldMatrix::from_codes(F, {{3, 1}, {0, 1}}));
    CHECK(inst.det_T == FieldElem{3});
    CHECK(inst.G == FieldMatrix::from_codes(F, {{3, 4, 0}, {0, 1, 2}}));
    CHECK(inst.report.passed);
    CHECK(inst.report.minors_checked == 3);
    CHECK(inst.report.minors == codes({3, 1, 3}));
    CHECK_FALSE(inst.completed);
    CHECK(inst.warnings.empty());
}

TEST_CASE("build_code refusals") {
    try {
        build_code(SupportMatrix::from_bits({{1, 1, 0}, {1, 1, 0}}), 5);
        FAIL("expected NotMDSCondition");
    } catch (const NotMdsConditionError& e) {
        CHECK(e.witness() == std::vector<int>{1, 2});
    }
    try {
        build_code(SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}}), 2);
        FAIL("expected FieldTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooSmall);
    }
    CHECK_THROWS_AS(build_code(SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}}), 6), Error);
}

TEST_CASE("short rows are completed only when W vanishes") {
    const auto ones = SupportMatrix::from_bits({{1, 1, 1}, {1, 1, 1}});
    const auto inst = build_code(ones, 5);
    CHECK(inst.completed);
    CHECK(inst.construction.degrees() == std::vector<int>{1, 1});
    CHECK(inst.extra_roots.size() == 2);
    CHECK(inst.report.passed);
    CHECK_FALSE(inst.warnings.empty());

    SearchOptions literal;
    literal.complete_rows = false;
    CHECK_THROWS_AS(build_code(ones, 5, literal), NotFoundError);

    // (empty, {1}) has W = 1 and needs no completion.
    const auto plain = build_code(SupportMatrix::from_bits({{1, 1, 1}, {0, 1, 1}}), 5);
    CHECK_FALSE(plain.completed);
    CHECK(plain.report.passed);
}

TEST_CASE("complete_family tops every set up to m-1 fresh roots") {
    const auto C = complete_family(fam(4, {{}, {1}, {1, 2}}));
    CHECK(C.n() == 7);
    CHECK(C.set(1) == RootSet::of({5, 6}));
    CHECK(C.set(2) == RootSet::of({1, 7}));
    CHECK(C.set(3) == RootSet::of({1, 2}));
}

TEST_CASE("verify_mds failure reports") {
    const auto F = make_field(5);
    const auto M = SupportMatrix::from_bits({{1, 1, 1}, {1, 1, 1}});
    const auto zero_col = verify_mds(FieldMatrix::from_codes(F, {{1, 0, 1}, {1, 0, 2}}), M);
    CHECK_FALSE(zero_col.passed);
    CHECK(zero_col.singular_columns == std::vector<std::vector<int>>{{1, 2}, {2, 3}});

    const auto M2 = SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}});
    const auto fit = verify_mds(FieldMatrix::from_codes(F, {{3, 4, 1}, {0, 1, 2}}), M2);
    CHECK_FALSE(fit.passed);
    CHECK(fit.fit_violations == std::vector<std::pair<int, int>>{{1, 3}});

    CHECK_THROWS_AS(verify_mds(FieldMatrix(F, 2, 2), M2), Error);
}

TEST_CASE("constructed instances fit, are MDS, and match the root polynomials") {
    Rng rng(97);
    int built = 0;
    for (int t = 0; t < 150; ++t) {
        const auto M = random_mds_support(2 + static_cast<int>(rng.below(3)), 4, 7, rng);
        const auto q = next_prime_power(static_cast<std::uint64_t>(M.n() + M.m() - 1));
        const auto inst = build_code(M, q);
        ++built;
        CHECK(inst.report.passed);
        CHECK(inst.report.fit_violations.empty());
        CHECK(inst.det_T.code != 0);
        // Independent MDS check: every m columns of G by elimination.
        std::vector<int> cols(static_cast<std::size_t>(M.m()));
        std::iota(cols.begin(), cols.end(), 0);
        int minors = 0;
        while (true) {
            CHECK(invertible(inst.G.columns(cols)));
            ++minors;
            int i = M.m() - 1;
            while (i >= 0 && cols[static_cast<std::size_t>(i)] == M.n() - M.m() + i) --i;
            if (i < 0) break;
            ++cols[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < M.m(); ++j) cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
        }
        CHECK(minors == inst.report.minors_checked);
        for (int i = 1; i <= M.m(); ++i) {
            for (int j = 1; j <= M.n(); ++j) {
                if (!M.at(i, j)) CHECK(inst.G.at(i - 1, j - 1) == inst.field.zero());
            }
        }
    }
    CHECK(built == 150);
}

TEST_CASE("randomized W test") {
    CHECK(w_probably_zero(fam(3, {{1}, {1}}), 3, 1));
    CHECK_FALSE(w_probably_zero(fam(3, {{3}, {1}}), 3, 1));
    CHECK_THROWS_AS(w_probably_zero(fam(3, {{3}, {1}}), 0, 1), Error);
}
