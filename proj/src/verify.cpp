#include "gmmds/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gmmds/codegen.hpp"
#include "gmmds/error.hpp"
#include "gmmds/wpoly.hpp"

namespace gmmds {

namespace {

constexpr std::size_t kMaxDetails = 20;

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<std::uint64_t> subsets_of_size(int n, int d) {
    std::vector<std::uint64_t> out;
    if (d == 0) return {0};
    std::uint64_t s = (std::uint64_t{1} << d) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (s < limit) {
        out.push_back(s);
        // Gosper's hack: next integer with the same popcount.
        const std::uint64_t c = s & (~s + 1);
        const std::uint64_t r = s + c;
        s = (((r ^ s) >> 2U) / c) | r;
    }
    return out;
}

// Row permutations that only exchange polynomials of equal degree.
std::vector<std::vector<int>> degree_preserving_perms(const std::vector<int>& degrees) {
    std::vector<int> perm(degrees.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size() && ok; ++i) {
            ok = degrees[static_cast<std::size_t>(perm[i])] == degrees[i];
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::uint32_t> key_under(const std::vector<RootSet>& sets, int n, const std::vector<int>& perm) {
    const int m = static_cast<int>(sets.size());
    std::vector<std::uint32_t> cols(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < m; ++i) {
        const std::uint64_t bits = sets[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].bits();
        for (int v = 0; v < n; ++v) {
            if ((bits >> v) & 1U) cols[static_cast<std::size_t>(v)] |= 1U << (m - 1 - i);
        }
    }
    std::sort(cols.begin(), cols.end(), std::greater<>());
    return cols;
}

std::vector<std::uint32_t> best_key(const std::vector<RootSet>& sets, int n,
                                    const std::vector<std::vector<int>>& perms) {
    std::vector<std::uint32_t> best;
    for (const auto& perm : perms) {
        auto key = key_under(sets, n, perm);
        if (best.empty() || key > best) best = std::move(key);
    }
    return best;
}

RootFamily family_from_key(const std::vector<std::uint32_t>& key, int m, int n) {
    std::vector<RootSet> sets(static_cast<std::size_t>(m));
    for (std::size_t t = 0; t < key.size(); ++t) {
        for (int i = 0; i < m; ++i) {
            if ((key[t] >> (m - 1 - i)) & 1U) {
                sets[static_cast<std::size_t>(i)] = sets[static_cast<std::size_t>(i)] | RootSet(std::uint64_t{1} << t);
            }
        }
    }
    return RootFamily(n, std::move(sets));
}

bool family_less(const RootFamily& a, const RootFamily& b) {
    if (a.n() != b.n()) return a.n() < b.n();
    if (a.m() != b.m()) return a.m() < b.m();
    for (int i = 1; i <= a.m(); ++i) {
        if (a.set(i) != b.set(i)) return lex_less(a.set(i), b.set(i));
    }
    return false;
}

void check_profile(int m, int n, const std::vector<int>& profile) {
    if (static_cast<int>(profile.size()) != m) {
        throw Error(ErrorKind::InvalidInput, fmt::format("profile has {} entries, expected m = {}", profile.size(), m));
    }
    int top = -1;
    for (int d : profile) {
        if (d < 0 || d > m - 1) throw Error(ErrorKind::InvalidInput, fmt::format("degree {} outside [0, m-1]", d));
        top = std::max(top, d);
    }
    if (top != m - 1) throw Error(ErrorKind::InvalidInput, "profile needs a degree equal to m-1");
    if (n < top || n > m * (m - 1) || n > 64) {
        throw Error(ErrorKind::InvalidInput, fmt::format("n = {} outside [{}, {}]", n, top, m * (m - 1)));
    }
}

}  // namespace

std::vector<std::vector<int>> all_profiles(int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(current.size()) == m - 1) {
            current.push_back(m - 1);
            out.push_back(current);
            current.pop_back();
            return;
        }
        for (int d = lo; d <= m - 1; ++d) {
            current.push_back(d);
            rec(d);
            current.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::uint32_t> canonical_key(const RootFamily& F) {
    return best_key(F.sets(), F.n(), degree_preserving_perms(F.degrees()));
}

RootFamily canonical_form(const RootFamily& F) { return family_from_key(canonical_key(F), F.m(), F.n()); }

std::vector<RootFamily> enumerate_families(int m, int n, const std::vector<int>& profile, bool canonical) {
    check_profile(m, n, profile);
    std::vector<std::vector<std::uint64_t>> choices;
    for (int d : profile) choices.push_back(subsets_of_size(n, d));
    const auto perms = degree_preserving_perms(profile);

    std::vector<RootFamily> raw;
    std::set<std::vector<std::uint32_t>> keys;
    std::vector<RootSet> sets(static_cast<std::size_t>(m));
    std::function<void(int)> rec = [&](int i) {
        if (i == m) {
            if (canonical) {
                keys.insert(best_key(sets, n, perms));
            } else {
                raw.emplace_back(n, sets);
            }
            return;
        }
        for (auto bits : choices[static_cast<std::size_t>(i)]) {
            sets[static_cast<std::size_t>(i)] = RootSet(bits);
            rec(i + 1);
        }
    };
    rec(0);
    if (!canonical) return raw;

    // Keys were maximized over degree-preserving row orders; rebuild with the
    // requested profile order, which those perms keep fixed.
    std::vector<RootFamily> out;
    out.reserve(keys.size());
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) out.push_back(family_from_key(*it, m, n));
    return out;
}

namespace {

// Every subfamily I of the rows so far has |common zeros| <= m - |I|.
bool zeros_fit(const std::vector<std::uint64_t>& zeros, std::size_t count, int m) {
    const std::uint32_t last = 1U << (count - 1);
    for (std::uint32_t mask = last; mask < (last << 1); ++mask) {
        std::uint64_t common = ~std::uint64_t{0};
        for (std::size_t i = 0; i < count; ++i) {
            if ((mask >> i) & 1U) common &= zeros[i];
        }
        if (std::popcount(common) > m - std::popcount(mask)) return false;
    }
    return true;
}

}  // namespace

std::vector<SupportMatrix> enumerate_mds_supports(int m, int n, int threads) {
    if (m < 2 || n < m || n > 16) throw Error(ErrorKind::InvalidInput, "need 2 <= m <= n <= 16");
    std::vector<std::uint64_t> choices;
    for (int d = 0; d <= m - 1; ++d) {
        for (auto bits : subsets_of_size(n, d)) choices.push_back(bits);
    }
    std::vector<int> identity(static_cast<std::size_t>(m));
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(identity);
    } while (std::next_permutation(identity.begin(), identity.end()));

    // Rows are chosen as a nondecreasing index sequence; the first index
    // splits the work.
    std::vector<std::set<std::vector<std::uint32_t>>> found(choices.size());
    parallel_for(choices.size(), threads, [&](std::size_t first) {
        std::vector<std::uint64_t> zeros(static_cast<std::size_t>(m));
        std::vector<RootSet> sets(static_cast<std::size_t>(m));
        auto& keys = found[first];
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
            if (depth == static_cast<std::size_t>(m)) {
                for (std::size_t i = 0; i < depth; ++i) sets[i] = RootSet(zeros[i]);
                keys.insert(best_key(sets, n, perms));
                return;
            }
            for (std::size_t c = from; c < choices.size(); ++c) {
                zeros[depth] = choices[c];
                if (zeros_fit(zeros, depth + 1, m)) rec(depth + 1, c);
            }
        };
        zeros[0] = choices[first];
        rec(1, first);
    });
    std::set<std::vector<std::uint32_t>> keys;
    for (auto& part : found) keys.merge(part);

    std::vector<SupportMatrix> out;
    out.reserve(keys.size());
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        const RootFamily F = family_from_key(*it, m, n);
        std::vector<std::uint64_t> rows;
        for (auto s : F.sets()) rows.push_back(full & ~s.bits());
        out.emplace_back(n, std::move(rows));
    }
    return out;
}

SupportMatrix random_mds_support(int m, int n_lo, int n_hi, Rng& rng) {
    if (m < 2 || n_lo < m || n_hi < n_lo || n_hi > 64) throw Error(ErrorKind::InvalidInput, "need 2 <= m <= n_lo <= n_hi <= 64");
    while (true) {
        const int n = rng.between(n_lo, n_hi);
        const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        std::vector<int> profile;
        for (int i = 0; i < m; ++i) profile.push_back(rng.between(0, m - 1));
        const RootFamily F = random_family(n, profile, rng);
        std::vector<std::uint64_t> rows;
        for (auto s : F.sets()) rows.push_back(full & ~s.bits());
        SupportMatrix M(n, std::move(rows));
        if (mds_condition(M).satisfied) return M;
    }
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::ZeroGrp: return "consistent-zero-grp";
        case Classification::NonzeroGnrp: return "consistent-nonzero-gnrp";
        case Classification::NonzeroGrp: return "converse-anomaly";
        case Classification::Counterexample: return "COUNTEREXAMPLE";
    }
    return "unknown";
}

ConjectureCheck check_conjecture(const RootFamily& F, bool exact, std::uint64_t seed) {
    ConjectureCheck out;
    out.grp = has_grp(F).has_value();
    if (exact) {
        out.zero = is_identically_zero(w_polynomial(F));
    } else {
        out.zero = w_probably_zero(F, 3, seed);
        if (out.zero && !out.grp) {
            out.zero = is_identically_zero(w_polynomial(F));
            out.false_alarm = !out.zero;
        }
    }
    if (out.zero) {
        out.classification = out.grp ? Classification::ZeroGrp : Classification::Counterexample;
    } else {
        out.classification = out.grp ? Classification::NonzeroGrp : Classification::NonzeroGnrp;
    }
    return out;
}

RootFamily random_family(int n, const std::vector<int>& profile, Rng& rng) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::iota(vars.begin(), vars.end(), 1);
    std::vector<RootSet> sets;
    for (int d : profile) {
        std::uint64_t bits = 0;
        for (int i = 0; i < d; ++i) {
            const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
            std::swap(vars[static_cast<std::size_t>(i)], vars[j]);
            bits |= std::uint64_t{1} << (vars[static_cast<std::size_t>(i)] - 1);
        }
        sets.emplace_back(bits);
    }
    return RootFamily(n, std::move(sets));
}

VerifyReport run_suite(const SuiteScope& scope) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.scope = scope;
    const int m = scope.m;
    if (m < 2) throw Error(ErrorKind::InvalidInput, "m must be at least 2");
    const auto profiles = scope.profile.empty() ? all_profiles(m) : std::vector<std::vector<int>>{scope.profile};

    std::vector<RootFamily> families;
    std::vector<std::size_t> profile_of;
    if (scope.mode == SuiteMode::Exhaustive) {
        for (std::size_t p = 0; p < profiles.size(); ++p) {
            for (auto& F : enumerate_families(m, scope.n, profiles[p], true)) {
                families.push_back(std::move(F));
                profile_of.push_back(p);
            }
        }
    } else {
        const int lo = scope.n_min == 0 ? scope.n : scope.n_min;
        if (lo < m || lo > scope.n) throw Error(ErrorKind::InvalidInput, "need m <= n_min <= n");
        for (const auto& p : profiles) check_profile(m, scope.n, p);
        for (std::uint64_t i = 0; i < scope.samples; ++i) {
            Rng rng(scope.seed, i);
            const std::size_t p = profiles.size() == 1 ? 0 : rng.below(profiles.size());
            const int n = rng.between(lo, scope.n);
            families.push_back(random_family(n, profiles[p], rng));
            profile_of.push_back(p);
        }
    }
    if (scope.budget != 0 && families.size() > scope.budget) {
        families.erase(families.begin() + static_cast<std::ptrdiff_t>(scope.budget), families.end());
        profile_of.resize(scope.budget);
        report.budget_exceeded = true;
    }

    std::vector<ConjectureCheck> results(families.size());
    parallel_for(families.size(), scope.threads, [&](std::size_t i) {
        results[i] = check_conjecture(families[i], !scope.fast, splitmix64(scope.seed ^ (i * 0x9E3779B97F4A7C15ULL)));
    });

    for (const auto& p : profiles) report.per_profile.push_back({p, 0});
    for (std::size_t i = 0; i < families.size(); ++i) {
        const auto& r = results[i];
        ++report.tested;
        ++report.per_profile[profile_of[i]].tested;
        report.zero_count += r.zero ? 1 : 0;
        report.grp_count += r.grp ? 1 : 0;
        report.false_alarms += r.false_alarm ? 1 : 0;
        switch (r.classification) {
            case Classification::ZeroGrp: ++report.zero_grp; break;
            case Classification::NonzeroGnrp: ++report.nonzero_gnrp; break;
            case Classification::NonzeroGrp:
                ++report.nonzero_grp;
                report.converse_anomalies.push_back(families[i]);
                break;
            case Classification::Counterexample:
                ++report.counterexample_count;
                report.counterexamples.push_back(families[i]);
                break;
        }
    }
    std::sort(report.counterexamples.begin(), report.counterexamples.end(), family_less);
    std::sort(report.converse_anomalies.begin(), report.converse_anomalies.end(), family_less);
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

RpEquivalenceReport check_rp_equivalence(int m, int n, std::uint64_t exhaustive_limit, std::uint64_t seed) {
    if (m < 2 || n < m || n > 64) throw Error(ErrorKind::InvalidInput, "need 2 <= m <= n <= 64");
    RpEquivalenceReport report;
    report.m = m;
    report.n = n;
    const auto rows = subsets_of_size(n, n - m + 1);
    long double total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<long double>(rows.size());
    report.exhaustive = total <= static_cast<long double>(exhaustive_limit);

    auto check = [&](const std::vector<std::uint64_t>& chosen) {
        const SupportMatrix M(n, chosen);
        const bool mds = mds_condition(M).satisfied;
        const bool rp = has_rp(to_root_family(M)).has_value();
        ++report.checked;
        report.mds_true += mds ? 1 : 0;
        if (mds == rp) report.violations.push_back(M);
    };

    std::vector<std::uint64_t> chosen(static_cast<std::size_t>(m));
    if (report.exhaustive) {
        std::function<void(int)> rec = [&](int i) {
            if (i == m) return check(chosen);
            for (auto r : rows) {
                chosen[static_cast<std::size_t>(i)] = r;
                rec(i + 1);
            }
        };
        rec(0);
    } else {
        for (std::uint64_t s = 0; s < exhaustive_limit; ++s) {
            Rng rng(seed, s);
            for (auto& r : chosen) r = rows[rng.below(rows.size())];
            check(chosen);
        }
    }
    return report;
}

bool unbroken_regime(const RootFamily& F) {
    const int m = F.m();
    if (m <= 4) return true;
    if (m != 5) return false;
    const auto d = F.degrees();
    return std::all_of(d.begin(), d.end(), [m](int x) { return x == m - 1; });
}

namespace {

std::string describe(const RootFamily& F, const ReductionTrace& t, const std::string& what) {
    std::vector<std::string> steps;
    for (const auto& r : t.rounds) steps.push_back(fmt::format("S={} beta=a{}", format_set(r.broken.elements), r.beta));
    return fmt::format("{}: family {} run [{}] R={} survivor P{}", what, format_family(F), fmt::join(steps, "; "),
                       format_set(t.R), t.survivor);
}

void note(LemmaReport& report, std::string detail) {
    if (report.details.size() < kMaxDetails) report.details.push_back(std::move(detail));
}

}  // namespace

void check_lemmas_on_family(const RootFamily& F, LemmaReport& report) {
    const int m = F.m();
    ++report.families;
    if (has_grp(F)) return;
    ++report.gnrp_families;

    for (const auto& S : all_rs_subsets(F, all_polys(m))) {
        if (S.r() + S.s() > m) {
            ++report.oversized_subset;
            note(report, fmt::format("oversized_subset: GNRP family {} has ({},{})-subset {}", format_family(F), S.r(), S.s(),
                                     format_set(S.elements)));
        }
    }

    const auto runs = reduce_all(F);
    if (runs.stuck > 0) {
        ++report.stuck;
        note(report, fmt::format("stuck: GNRP family {} reached identical top polynomials", format_family(F)));
    }
    const auto degrees = F.degrees();
    const int degree_sum = std::accumulate(degrees.begin(), degrees.end(), 0);
    const bool check6 = unbroken_regime(F);
    report.unbroken_checked = report.unbroken_checked || check6;

    for (const auto& trace : runs.accepted) {
        ++report.runs;
        if (static_cast<int>(trace.rounds.size()) > degree_sum) {
            ++report.too_many_rounds;
            note(report, describe(F, trace, "rounds"));
        }
        const std::uint32_t star = all_polys(m) & ~(1U << (trace.survivor - 1));
        for (const auto& S : all_rs_subsets(F, star)) {
            if (S.r() + S.s() != m) continue;
            bool in_top = false;
            for (int i : S.member_list()) in_top = in_top || F.degree(i) == m - 1;
            if (!in_top) {
                ++report.tight_without_top;
                note(report, describe(F, trace, fmt::format("tight_without_top S={}", format_set(S.elements))));
            }
            if (!weakly_reducible(F, S)) {
                ++report.tight_not_weak;
                note(report, describe(F, trace, fmt::format("tight_not_weak S={}", format_set(S.elements))));
            }
        }
        std::vector<RSSubset> strong;
        for (const auto& S : strongly_reducible_subsets(F, star)) {
            if (S.r() + S.s() == m) strong.push_back(S);
        }
        for (std::size_t a = 0; a < strong.size(); ++a) {
            for (std::size_t b = a + 1; b < strong.size(); ++b) {
                if ((strong[a].members & strong[b].members) != 0) {
                    ++report.overlapping_strong;
                    note(report, describe(F, trace, fmt::format("overlapping_strong S1={} S2={}", format_set(strong[a].elements),
                                                                format_set(strong[b].elements))));
                }
            }
        }
        if (check6) {
            for (const auto& S : strong) {
                if ((S.elements & trace.R).empty()) {
                    ++report.unbroken_strong;
                    note(report, describe(F, trace, fmt::format("unbroken_strong unbroken S={}", format_set(S.elements))));
                }
            }
        }
    }
}

LemmaReport check_reduction_lemmas(int m, const std::vector<int>& profile, SuiteMode mode, int n,
                                   std::uint64_t samples, std::uint64_t seed) {
    LemmaReport report;
    if (mode == SuiteMode::Exhaustive) {
        for (const auto& F : enumerate_families(m, n, profile, true)) check_lemmas_on_family(F, report);
        return report;
    }
    const auto profiles = profile.empty() ? all_profiles(m) : std::vector<std::vector<int>>{profile};
    const std::uint64_t attempts = samples * 200;
    for (std::uint64_t i = 0; i < attempts && report.gnrp_families < samples; ++i) {
        Rng rng(seed, i);
        const auto& p = profiles[profiles.size() == 1 ? 0 : rng.below(profiles.size())];
        const int nn = rng.between(m, m * (m - 1));
        check_lemmas_on_family(random_family(nn, p, rng), report);
    }
    return report;
}

}  // namespace gmmds
