#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmmds/error.hpp"
#include "gmmds/io.hpp"
#include "oracles.hpp"

using namespace gmmds;

namespace {

void expect_parse_error(const std::function<void()>& f) {
    try {
        f();
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

}  // namespace

TEST_CASE("matrix text format") {
    const auto M = parse_matrix("110\n011\n");
    CHECK(M == SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}}));
    CHECK(parse_matrix("# comment\n\n 110 \r\n011") == M);
}

TEST_CASE("matrix JSON format") {
    const auto M = parse_matrix(R"({"m":2,"n":3,"rows":["110","011"]})");
    CHECK(M == SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}}));
    CHECK(matrix_to_json(M).dump() == R"({"m":2,"n":3,"rows":["110","011"]})");
}

TEST_CASE("malformed matrices") {
    expect_parse_error([] { parse_matrix("1x0\n011\n"); });
    expect_parse_error([] { parse_matrix("110\n01\n"); });
    expect_parse_error([] { parse_matrix(""); });
    expect_parse_error([] { parse_matrix("110\n"); });
    expect_parse_error([] { parse_matrix(R"({"rows":"110"})"); });
    expect_parse_error([] { parse_matrix(R"({"m":3,"rows":["110","011"]})"); });
    expect_parse_error([] { parse_matrix(R"({"rows":["110",])"); });
}

TEST_CASE("family JSON") {
    const auto F = parse_family(R"({"n":3,"sets":[[3],[1]]})");
    CHECK(F == RootFamily::from_lists(3, {{3}, {1}}));
    CHECK(family_to_json(F).dump() == R"({"n":3,"sets":[[3],[1]]})");
    expect_parse_error([] { parse_family(R"({"n":3,"sets":[[4],[1]]})"); });
    expect_parse_error([] { parse_family(R"({"n":3})"); });
    expect_parse_error([] { parse_family(R"({"n":3,"sets":[["a"],[1]]})"); });
    CHECK_THROWS_AS(parse_family(R"({"n":3,"sets":[[1,2],[1]]})"), DegreeTooHighError);
}

TEST_CASE("parse, print, parse is the identity") {
    Rng rng(113);
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(rng.below(4));
        std::vector<int> profile;
        for (int i = 0; i < m; ++i) profile.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(m))));
        const auto F = oracle::family(rng, m + static_cast<int>(rng.below(6)), profile);
        const auto text = family_to_json(F).dump();
        CHECK(parse_family(text) == F);
        CHECK(family_to_json(parse_family(text)).dump() == text);

        std::vector<std::uint64_t> rows;
        for (int i = 0; i < m; ++i) rows.push_back(rng.below(std::uint64_t{1} << F.n()));
        const SupportMatrix M(F.n(), rows);
        const auto mt = matrix_to_json(M).dump();
        CHECK(parse_matrix(mt) == M);
        CHECK(matrix_to_json(parse_matrix(mt)).dump() == mt);
        std::string plain;
        for (const auto& r : M.row_strings()) plain += r + "\n";
        CHECK(parse_matrix(plain) == M);
    }
}

TEST_CASE("field elements in JSON") {
    CHECK(element_to_json(make_field(5), {3}) == Json(3));
    CHECK(element_to_json(make_field(9), {7}) == Json::array({1, 2}));
    CHECK(field_to_json(make_field(4))["modulus"] == Json::array({1, 1, 1}));
}

TEST_CASE("instance JSON of the worked example") {
    const auto inst = build_code(SupportMatrix::from_bits({{1, 1, 0}, {0, 1, 1}}), 5);
    const auto j = instance_to_json(inst, 7, SearchStrategy::Auto);
    CHECK(j["seed"] == 7);
    CHECK(j["G"] == Json::parse("[[3,4,0],[0,1,2]]"));
    CHECK(j["points"] == Json::parse("[0,1,2]"));
    CHECK(j["det_T"] == 3);
    CHECK(j["verified"] == true);
    CHECK(j["completed"] == false);
}

TEST_CASE("trace JSON") {
    const auto F = RootFamily::from_lists(3, {{1, 2}, {1, 3}, {2, 3}});
    const auto j = trace_to_json(reduce(F), "lex");
    CHECK(j["status"] == "accepted");
    CHECK(j["R"] == Json::parse("[1]"));
    CHECK(j["rounds"][0]["beta"] == 1);
    CHECK(j["rounds"][0]["degrees"] == Json::parse("[1,1,2]"));
    CHECK(j["n_R"]["1"] == 2);
}

TEST_CASE("report JSON") {
    SuiteScope s;
    s.m = 2;
    s.n = 2;
    s.seed = 5;
    const auto j = report_to_json(run_suite(s));
    CHECK(j["scope"]["seed"] == 5);
    CHECK(j["scope"]["mode"] == "exhaustive");
    CHECK(j["counts"]["tested"] == 3);
    CHECK(j["counts"]["counterexamples"] == 0);
    CHECK(j["counterexamples"].empty());
}

TEST_CASE("reading a missing file") {
    expect_parse_error([] { read_file("/nonexistent/matrix.txt"); });
}
