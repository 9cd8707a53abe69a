#include "gmmds/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gmmds/error.hpp"

namespace gmmds {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool looks_like_json(std::string_view text) {
    const auto t = trim(text);
    const auto b = t.find_first_not_of(" \t\r\n");
    return b != std::string_view::npos && t[b] == '{';
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(fmt::format("invalid JSON: {}", e.what()));
    }
}

std::vector<std::vector<int>> bits_from_rows(const std::vector<std::string>& rows) {
    std::vector<std::vector<int>> bits;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<int> row;
        for (char c : rows[i]) {
            if (c != '0' && c != '1') fail(fmt::format("row {}: unexpected character '{}'", i + 1, c));
            row.push_back(c - '0');
        }
        if (!bits.empty() && row.size() != bits.front().size()) {
            fail(fmt::format("row {} has length {}, expected {}", i + 1, row.size(), bits.front().size()));
        }
        bits.push_back(std::move(row));
    }
    if (bits.empty()) fail("matrix has no rows");
    return bits;
}

SupportMatrix build_matrix(const std::vector<std::string>& rows) {
    try {
        return SupportMatrix::from_bits(bits_from_rows(rows));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        fail(e.what());
    }
}

std::vector<int> set_list(RootSet s) { return s.elements(); }

Json set_json(RootSet s) { return Json(set_list(s)); }

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(fmt::format("cannot read {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SupportMatrix parse_matrix(std::string_view text) {
    if (looks_like_json(text)) {
        const Json j = parse_json(text);
        if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) fail("matrix JSON needs a \"rows\" array");
        std::vector<std::string> rows;
        for (const auto& r : j["rows"]) {
            if (!r.is_string()) fail("matrix rows must be strings of 0/1");
            rows.push_back(r.get<std::string>());
        }
        SupportMatrix M = build_matrix(rows);
        if (j.contains("m") && (!j["m"].is_number_integer() || j["m"].get<int>() != M.m())) fail("\"m\" disagrees with rows");
        if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<int>() != M.n())) fail("\"n\" disagrees with rows");
        return M;
    }
    std::vector<std::string> rows;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        rows.emplace_back(t);
    }
    return build_matrix(rows);
}

Json matrix_to_json(const SupportMatrix& M) {
    return Json{{"m", M.m()}, {"n", M.n()}, {"rows", M.row_strings()}};
}

RootFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("sets")) fail("family JSON needs \"n\" and \"sets\"");
    if (!j["n"].is_number_integer() || !j["sets"].is_array()) fail("family JSON: \"n\" integer, \"sets\" array");
    const int n = j["n"].get<int>();
    std::vector<std::vector<int>> sets;
    for (const auto& s : j["sets"]) {
        if (!s.is_array()) fail("each set must be an array of root indices");
        std::vector<int> roots;
        for (const auto& v : s) {
            if (!v.is_number_integer()) fail("root indices must be integers");
            const int r = v.get<int>();
            if (r < 1 || r > n) fail(fmt::format("root a{} outside 1..{}", r, n));
            roots.push_back(r);
        }
        sets.push_back(std::move(roots));
    }
    try {
        return RootFamily::from_lists(n, sets);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegreeTooHigh) throw;
        fail(e.what());
    }
}

RootFamily parse_family(std::string_view text) { return family_from_json(parse_json(text)); }

Json family_to_json(const RootFamily& F) {
    Json sets = Json::array();
    for (auto s : F.sets()) sets.push_back(set_json(s));
    return Json{{"n", F.n()}, {"sets", sets}};
}

Json element_to_json(const GaloisField& field, FieldElem a) {
    if (field.is_prime_field()) return a.code;
    return Json(field.digits(a));
}

Json field_to_json(const GaloisField& field) {
    return Json{{"q", field.size()}, {"p", field.characteristic()}, {"k", field.degree()}, {"modulus", field.modulus()}};
}

const char* to_string(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::Auto: return "auto";
        case SearchStrategy::Greedy: return "greedy";
        case SearchStrategy::Exhaustive: return "exhaustive";
        case SearchStrategy::Random: return "random";
    }
    return "unknown";
}

namespace {

Json matrix_json(const FieldMatrix& A) {
    Json rows = Json::array();
    for (int i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < A.cols(); ++j) row.push_back(element_to_json(A.field(), A.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json instance_to_json(const CodeInstance& inst, std::uint64_t seed, SearchStrategy strategy) {
    Json points = Json::array();
    for (auto p : inst.points) points.push_back(element_to_json(inst.field, p));
    Json extra = Json::array();
    for (auto p : inst.extra_roots) extra.push_back(element_to_json(inst.field, p));
    Json singular = Json::array();
    for (const auto& cols : inst.report.singular_columns) singular.push_back(cols);
    Json fit = Json::array();
    for (auto [r, c] : inst.report.fit_violations) fit.push_back({r, c});
    return Json{{"seed", seed},
                {"strategy", to_string(strategy)},
                {"matrix", matrix_to_json(inst.M)},
                {"family", family_to_json(inst.F)},
                {"field", field_to_json(inst.field)},
                {"completed", inst.completed},
                {"construction", family_to_json(inst.construction)},
                {"points", points},
                {"extra_roots", extra},
                {"T", matrix_json(inst.T)},
                {"V", matrix_json(inst.V)},
                {"G", matrix_json(inst.G)},
                {"det_T", element_to_json(inst.field, inst.det_T)},
                {"verified", inst.report.passed},
                {"minors_checked", inst.report.minors_checked},
                {"singular_columns", singular},
                {"fit_violations", fit},
                {"warnings", inst.warnings}};
}

Json trace_to_json(const ReductionTrace& trace, const char* policy) {
    Json rounds = Json::array();
    for (const auto& r : trace.rounds) {
        rounds.push_back(Json{{"round", r.round},
                              {"S", set_json(r.broken.elements)},
                              {"r", r.broken.r()},
                              {"s", r.broken.s()},
                              {"members", r.broken.member_list()},
                              {"beta", r.beta},
                              {"n_beta", r.n_beta},
                              {"degrees", r.degrees_after}});
    }
    Json n_R = Json::object();
    for (auto [root, count] : trace.n_R) n_R[std::to_string(root)] = count;
    return Json{{"policy", policy},
                {"status", trace.status == TraceStatus::Accepted ? "accepted" : "stuck"},
                {"initial", family_to_json(trace.initial)},
                {"rounds", rounds},
                {"R", set_json(trace.R)},
                {"n_R", n_R},
                {"final", family_to_json(trace.final)},
                {"survivor", trace.survivor},
                {"order", trace.order}};
}

Json report_to_json(const VerifyReport& report) {
    const auto& s = report.scope;
    Json per_profile = Json::array();
    for (const auto& t : report.per_profile) per_profile.push_back(Json{{"profile", t.profile}, {"tested", t.tested}});
    Json cex = Json::array();
    for (const auto& F : report.counterexamples) {
        Json j = family_to_json(F);
        j["classification"] = to_string(Classification::Counterexample);
        cex.push_back(std::move(j));
    }
    for (const auto& F : report.converse_anomalies) {
        Json j = family_to_json(F);
        j["classification"] = to_string(Classification::NonzeroGrp);
        cex.push_back(std::move(j));
    }
    return Json{{"scope",
                 Json{{"m", s.m},
                      {"n", s.n},
                      {"n_min", s.n_min == 0 ? s.n : s.n_min},
                      {"profile", s.profile},
                      {"mode", s.mode == SuiteMode::Exhaustive ? "exhaustive" : "random"},
                      {"samples", s.samples},
                      {"seed", s.seed},
                      {"fast", s.fast}}},
                {"counts",
                 Json{{"tested", report.tested},
                      {"w_zero", report.zero_count},
                      {"grp", report.grp_count},
                      {"zero_grp", report.zero_grp},
                      {"nonzero_gnrp", report.nonzero_gnrp},
                      {"nonzero_grp", report.nonzero_grp},
                      {"counterexamples", report.counterexample_count},
                      {"false_alarms", report.false_alarms}}},
                {"per_profile", per_profile},
                {"counterexamples", cex},
                {"budget_exceeded", report.budget_exceeded},
                {"runtime_seconds", report.runtime_seconds}};
}

}  // namespace gmmds
