// gmmds: build MDS generator matrices with prescribed zero patterns and check
// the combinatorics behind the construction.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gmmds/codegen.hpp"
#include "gmmds/error.hpp"
#include "gmmds/io.hpp"
#include "gmmds/reduction.hpp"
#include "gmmds/rng.hpp"
#include "gmmds/structures.hpp"
#include "gmmds/verify.hpp"
#include "gmmds/wpoly.hpp"

using namespace gmmds;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidInput:
        case ErrorKind::NotPrimePower:
        case ErrorKind::NonSquare:
        case ErrorKind::SizeMismatch:
        case ErrorKind::DegreeTooHigh:
        case ErrorKind::DegreesNotUniform:
        case ErrorKind::MissingAssignment:
            return kUsage;
        default:
            return kNegative;
    }
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_field_matrix(const char* name, const FieldMatrix& A) {
    fmt::print("{} =\n", name);
    for (int i = 0; i < A.rows(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < A.cols(); ++j) row.push_back(A.field().format(A.at(i, j)));
        fmt::print("  [{}]\n", fmt::join(row, " "));
    }
}

RootFamily load_family_or_matrix(const std::string& family_path, const std::string& matrix_path) {
    if (!family_path.empty()) return parse_family(read_file(family_path));
    return to_root_family(parse_matrix(read_file(matrix_path)));
}

struct CheckArgs {
    std::string matrix;
    bool json = false;
};

int cmd_check(const CheckArgs& a) {
    const SupportMatrix M = parse_matrix(read_file(a.matrix));
    const MdsCheck c = mds_condition(M);
    if (a.json) {
        print_json(Json{{"matrix", matrix_to_json(M)}, {"satisfied", c.satisfied}, {"witness", c.witness}});
    } else {
        fmt::print("matrix {}x{}\n", M.m(), M.n());
        for (const auto& w : validate(M)) fmt::print("warning: {}\n", w);
        if (c.satisfied) {
            fmt::print("MDS condition: satisfied\n");
        } else {
            fmt::print("MDS condition: violated by I={{{}}}\n", fmt::join(c.witness, ","));
        }
    }
    return c.satisfied ? kOk : kNegative;
}

struct BuildArgs {
    std::string matrix;
    std::uint64_t q = 0;
    std::string strategy = "auto";
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t budget = SearchOptions{}.budget;
    bool json = false;
    bool allow_small_field = false;
    bool no_complete_rows = false;
    bool dump_w = false;
};

SearchStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return SearchStrategy::Auto;
    if (s == "greedy") return SearchStrategy::Greedy;
    if (s == "exhaustive") return SearchStrategy::Exhaustive;
    if (s == "random") return SearchStrategy::Random;
    throw Error(ErrorKind::InvalidInput, fmt::format("unknown strategy '{}'", s));
}

int cmd_build(const BuildArgs& a) {
    const SupportMatrix M = parse_matrix(read_file(a.matrix));
    SearchOptions options;
    options.strategy = parse_strategy(a.strategy);
    options.seed = a.seed;
    options.budget = a.budget;
    options.allow_small_field = a.allow_small_field;
    options.complete_rows = !a.no_complete_rows;
    const CodeInstance inst = build_code(M, a.q, options);
    if (a.json) {
        Json j = instance_to_json(inst, a.seed, options.strategy);
        if (a.dump_w) j["W"] = to_string(w_polynomial(inst.F));
        print_json(j);
    } else {
        fmt::print("# seed {} strategy {}\n", a.seed, to_string(options.strategy));
        fmt::print("GF({}) modulus {}\n", inst.field.size(), inst.field.modulus());
        for (const auto& w : inst.warnings) fmt::print("warning: {}\n", w);
        std::vector<std::string> pts;
        for (auto p : inst.points) pts.push_back(inst.field.format(p));
        fmt::print("points = ({})\n", fmt::join(pts, ", "));
        if (inst.completed) {
            std::vector<std::string> extra;
            for (auto p : inst.extra_roots) extra.push_back(inst.field.format(p));
            fmt::print("construction {} with extra roots ({})\n", format_family(inst.construction), fmt::join(extra, ", "));
        }
        if (a.dump_w) fmt::print("W = {}\n", to_string(w_polynomial(inst.F)));
        print_field_matrix("T", inst.T);
        fmt::print("det(T) = {}\n", inst.field.format(inst.det_T));
        print_field_matrix("G", inst.G);
        fmt::print("verified: {} ({} minors)\n", inst.report.passed ? "yes" : "no", inst.report.minors_checked);
    }
    return inst.report.passed ? kOk : kNegative;
}

struct VerifyArgs {
    int m = 0;
    int n = 0;
    int n_min = 0;
    std::vector<int> profile;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    bool fast = false;
    std::string out;
    std::string counterexamples = "counterexamples.json";
    int threads = 0;
    std::uint64_t budget = 0;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
    SuiteScope scope;
    scope.m = a.m;
    scope.n = a.n;
    scope.n_min = a.n_min;
    scope.profile = a.profile;
    if (a.mode == "exhaustive") {
        scope.mode = SuiteMode::Exhaustive;
    } else if (a.mode == "random") {
        scope.mode = SuiteMode::Random;
    } else {
        throw Error(ErrorKind::InvalidInput, fmt::format("unknown mode '{}'", a.mode));
    }
    scope.samples = a.samples;
    scope.seed = a.seed;
    scope.fast = a.fast;
    scope.budget = a.budget;
    scope.threads = a.threads > 0 ? a.threads : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));

    const VerifyReport report = run_suite(scope);
    const Json j = report_to_json(report);
    if (!a.out.empty()) {
        std::ofstream(a.out) << j.dump(2) << '\n';
    }
    if (!report.counterexamples.empty()) {
        Json cex = Json::array();
        for (const auto& F : report.counterexamples) cex.push_back(family_to_json(F));
        std::ofstream(a.counterexamples) << Json{{"seed", a.seed}, {"counterexamples", cex}}.dump(2) << '\n';
    }
    if (a.json) {
        print_json(j);
    } else {
        fmt::print("# seed {} mode {} m {} n {}{}\n", a.seed, a.mode, a.m, a.n, a.fast ? " fast" : "");
        fmt::print("tested {}  W==0 {}  GRP {}\n", report.tested, report.zero_count, report.grp_count);
        fmt::print("zero+GRP {}  nonzero+GNRP {}  nonzero+GRP {}  counterexamples {}\n", report.zero_grp,
                   report.nonzero_gnrp, report.nonzero_grp, report.counterexample_count);
        if (report.false_alarms > 0) fmt::print("randomized false alarms rechecked: {}\n", report.false_alarms);
        if (report.budget_exceeded) fmt::print("budget reached; run truncated\n");
        for (const auto& F : report.counterexamples) fmt::print("COUNTEREXAMPLE {}\n", format_family(F));
        if (!report.counterexamples.empty()) fmt::print("counterexamples written to {}\n", a.counterexamples);
        fmt::print("runtime {:.3f}s\n", report.runtime_seconds);
    }
    return report.ok() ? kOk : kNegative;
}

struct ReduceArgs {
    std::string family;
    std::string matrix;
    std::string policy = "lex";
    bool json = false;
    bool allow_loose_n = false;
};

void print_trace(const ReductionTrace& t) {
    fmt::print("{:>5}  {:<14} {:>2} {:>2}  {:>5}  {}\n", "round", "S", "r", "s", "beta", "degrees");
    for (const auto& r : t.rounds) {
        fmt::print("{:>5}  {:<14} {:>2} {:>2}  {:>5}  ({})\n", r.round, format_set(r.broken.elements), r.broken.r(),
                   r.broken.s(), fmt::format("a{}", r.beta), fmt::join(r.degrees_after, ","));
    }
    fmt::print("R = {}  survivor P{}  final {}\n", format_set(t.R), t.survivor, format_family(t.final));
}

int cmd_reduce(const ReduceArgs& a) {
    const RootFamily F = load_family_or_matrix(a.family, a.matrix);
    const auto problems = validate_bounds(F, a.allow_loose_n);
    if (!problems.empty()) throw Error(ErrorKind::InvalidInput, fmt::format("{}", fmt::join(problems, "; ")));

    if (a.policy == "all") {
        const ReductionRuns runs = reduce_all(F);
        if (a.json) {
            Json traces = Json::array();
            for (const auto& t : runs.accepted) traces.push_back(trace_to_json(t, "all"));
            print_json(Json{{"family", family_to_json(F)}, {"accepted", traces}, {"stuck", runs.stuck}});
        } else {
            fmt::print("family {}\n", format_family(F));
            for (std::size_t i = 0; i < runs.accepted.size(); ++i) {
                fmt::print("run {}\n", i + 1);
                print_trace(runs.accepted[i]);
            }
            fmt::print("distinct R: {}  stuck branches: {}\n", runs.accepted.size(), runs.stuck);
        }
        return runs.accepted.empty() ? kNegative : kOk;
    }

    TieBreak policy = TieBreak::Lex;
    if (a.policy == "revlex") {
        policy = TieBreak::ReverseLex;
    } else if (a.policy != "lex") {
        throw Error(ErrorKind::InvalidInput, fmt::format("unknown policy '{}'", a.policy));
    }
    try {
        const ReductionTrace t = reduce(F, policy);
        if (a.json) {
            print_json(trace_to_json(t, a.policy.c_str()));
        } else {
            fmt::print("family {}\n", format_family(F));
            print_trace(t);
        }
        return kOk;
    } catch (const StuckGrpError& e) {
        const auto [i, j] = e.witness();
        if (a.json) {
            print_json(Json{{"policy", a.policy}, {"status", "stuck"}, {"family", family_to_json(F)},
                            {"witness", {i, j}}});
        } else {
            fmt::print("stuck: P{} and P{} are identical of degree m-1\n", i, j);
        }
        return kNegative;
    }
}

struct WArgs {
    std::string family;
    std::string matrix;
};

int cmd_w(const WArgs& a) {
    fmt::print("{}\n", to_string(w_polynomial(load_family_or_matrix(a.family, a.matrix))));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GM-MDS construction and verification toolkit"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* c = app.add_subcommand("check", "test the MDS condition on a support matrix");
    c->add_option("matrix", check.matrix, "support matrix file")->required();
    c->add_flag("--json", check.json);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "construct a generator matrix fitting a support matrix");
    b->add_option("--matrix", build.matrix, "support matrix file")->required();
    b->add_option("--q", build.q, "field size (prime power)")->required();
    b->add_option("--strategy", build.strategy, "auto|greedy|exhaustive|random");
    b->add_option("--seed", build.seed, "seed for the random strategy");
    b->add_option("--budget", build.budget, "search budget");
    b->add_flag("--json", build.json);
    b->add_flag("--allow-small-field", build.allow_small_field, "permit n <= q < n+m-1");
    b->add_flag("--no-complete-rows", build.no_complete_rows, "never add extra roots to short rows");
    b->add_flag("--dump-w", build.dump_w, "print W(P_1..P_m)");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "classify root families by W == 0 and GRP");
    v->add_option("--m", verify.m)->required();
    v->add_option("--n", verify.n, "variables (exhaustive) or upper bound (random)")->required();
    v->add_option("--n-min", verify.n_min, "random mode lower bound on n");
    v->add_option("--profile", verify.profile, "degrees d1,d2,...; default all")->delimiter(',');
    v->add_option("--mode", verify.mode, "exhaustive|random");
    v->add_option("--samples", verify.samples);
    v->add_option("--seed", verify.seed);
    v->add_flag("--fast", verify.fast, "randomized zero test with exact recheck");
    v->add_option("--out", verify.out, "write the JSON report here");
    v->add_option("--counterexamples", verify.counterexamples, "where counterexamples are persisted");
    v->add_option("--threads", verify.threads, "worker threads; default all cores");
    v->add_option("--budget", verify.budget, "maximum families; 0 = unlimited");
    v->add_flag("--json", verify.json);

    ReduceArgs reduce_args;
    auto* r = app.add_subcommand("reduce", "run the degree-reduction process");
    auto* rf = r->add_option("--family", reduce_args.family, "root family JSON");
    auto* rm = r->add_option("--matrix", reduce_args.matrix, "support matrix file");
    rf->excludes(rm);
    r->add_option("--policy", reduce_args.policy, "lex|revlex|all");
    r->add_flag("--json", reduce_args.json);
    r->add_flag("--allow-loose-n", reduce_args.allow_loose_n, "skip the n <= m(m-1) bound");

    WArgs w;
    auto* wc = app.add_subcommand("w", "print W(P_1..P_m) in canonical text");
    auto* wf = wc->add_option("--family", w.family, "root family JSON");
    auto* wm = wc->add_option("--matrix", w.matrix, "support matrix file");
    wf->excludes(wm);

    try {
        app.parse(argc, argv);
        if ((r->parsed() && reduce_args.family.empty() && reduce_args.matrix.empty()) ||
            (wc->parsed() && w.family.empty() && w.matrix.empty())) {
            throw CLI::RequiredError("--family or --matrix");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c->parsed()) return cmd_check(check);
        if (b->parsed()) return cmd_build(build);
        if (v->parsed()) return cmd_verify(verify);
        if (r->parsed()) return cmd_reduce(reduce_args);
        if (wc->parsed()) return cmd_w(w);
    } catch (const NotMdsConditionError& e) {
        fmt::print(stderr, "{}\n", e.what());
        return kNegative;
    } catch (const Error& e) {
        fmt::print(stderr, "{}\n", e.what());
        return exit_code_for(e.kind());
    }
    return kUsage;
}
