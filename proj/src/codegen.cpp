#include "gmmds/codegen.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "gmmds/error.hpp"
#include "gmmds/rng.hpp"
#include "gmmds/wpoly.hpp"

namespace gmmds {

namespace {

// Coefficients (low-to-high, length m) of prod (a - v) over the given values.
std::vector<FieldElem> root_poly_values(const GaloisField& field, const std::vector<FieldElem>& roots, int m) {
    std::vector<FieldElem> c(static_cast<std::size_t>(m), field.zero());
    c[0] = field.one();
    int degree = 0;
    for (FieldElem v : roots) {
        const FieldElem minus_v = field.neg(v);
        for (int j = degree + 1; j >= 0; --j) {
            FieldElem next = field.zero();
            if (j >= 1) next = c[static_cast<std::size_t>(j - 1)];
            if (j <= degree) next = field.add(next, field.mul(c[static_cast<std::size_t>(j)], minus_v));
            c[static_cast<std::size_t>(j)] = next;
        }
        ++degree;
    }
    return c;
}

// W with some variables substituted by field values.
class PartialPoly {
public:
    PartialPoly(const MultiPoly& p, const GaloisField& field) {
        for (const auto& [mono, c] : p.terms()) {
            const FieldElem v = field.from_int(c);
            if (v.code != 0) terms_.emplace_back(mono, v);
        }
    }

    bool is_zero() const noexcept { return terms_.empty(); }

    bool mentions(int var) const noexcept {
        return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first.exponent(var) > 0; });
    }

    PartialPoly substitute(int var, FieldElem value, const GaloisField& field) const {
        std::map<Monomial, FieldElem, GrlexFirst> acc;
        for (const auto& [mono, c] : terms_) {
            const int e = mono.exponent(var);
            const FieldElem coef = e == 0 ? c : field.mul(c, field.pow(value, static_cast<std::uint64_t>(e)));
            if (coef.code == 0) continue;
            auto [it, inserted] = acc.try_emplace(e == 0 ? mono : mono.with_exponent(var, 0), coef);
            if (!inserted) it->second = field.add(it->second, coef);
        }
        PartialPoly out;
        for (auto& [mono, c] : acc) {
            if (c.code != 0) out.terms_.emplace_back(mono, c);
        }
        return out;
    }

private:
    PartialPoly() = default;
    std::vector<std::pair<Monomial, FieldElem>> terms_;
};

class PointSearch {
public:
    PointSearch(const RootFamily& F, const GaloisField& field, std::uint64_t budget, bool backtrack, int distinct)
        : F_(F), field_(field), budget_(budget), backtrack_(backtrack), distinct_(distinct),
          used_(static_cast<std::size_t>(field.size()), false), points_(static_cast<std::size_t>(F.n())) {}

    std::vector<FieldElem> run() {
        const PartialPoly W(w_polynomial(F_), field_);
        if (W.is_zero() || !extend(1, W)) throw NotFoundError(tried_);
        return points_;
    }

private:
    bool extend(int var, const PartialPoly& partial) {
        if (var > F_.n()) return true;
        const bool free = !partial.mentions(var);
        const bool distinct = var <= distinct_;
        for (std::uint64_t code = 0; code < field_.size(); ++code) {
            if (distinct && used_[static_cast<std::size_t>(code)]) continue;
            if (++tried_ > budget_) throw NotFoundError(tried_ - 1);
            const FieldElem value{code};
            PartialPoly next = free ? partial : partial.substitute(var, value, field_);
            if (next.is_zero()) continue;
            if (distinct) used_[static_cast<std::size_t>(code)] = true;
            points_[static_cast<std::size_t>(var - 1)] = value;
            if (extend(var + 1, next)) return true;
            if (distinct) used_[static_cast<std::size_t>(code)] = false;
            if (!backtrack_) return false;
        }
        return false;
    }

    const RootFamily& F_;
    const GaloisField& field_;
    std::uint64_t budget_;
    bool backtrack_;
    int distinct_;
    std::uint64_t tried_ = 0;
    std::vector<bool> used_;
    std::vector<FieldElem> points_;
};

std::vector<FieldElem> random_search(const RootFamily& F, const GaloisField& field, const SearchOptions& options,
                                     int distinct) {
    Rng rng(options.seed);
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(field.size()));
    std::iota(codes.begin(), codes.end(), 0);
    const auto n = static_cast<std::size_t>(F.n());
    const auto d = static_cast<std::size_t>(distinct);
    std::vector<FieldElem> points(n);
    for (std::uint64_t t = 1; t <= options.budget; ++t) {
        for (std::size_t i = 0; i < d; ++i) {
            std::swap(codes[i], codes[i + rng.below(codes.size() - i)]);
            points[i] = FieldElem{codes[i]};
        }
        for (std::size_t i = d; i < n; ++i) points[i] = FieldElem{rng.below(field.size())};
        if (det(transformation(F, field, points)).code != 0) return points;
    }
    throw NotFoundError(options.budget);
}

void check_field_size(int n_points, int m_rows, const GaloisField& field, bool allow_small_field) {
    const std::uint64_t q = field.size();
    const auto n = static_cast<std::uint64_t>(n_points);
    const auto m = static_cast<std::uint64_t>(m_rows);
    if (q < n) throw Error(ErrorKind::FieldTooSmall, fmt::format("q = {} < n = {}: points cannot be distinct", q, n));
    if (q < n + m - 1 && !allow_small_field) {
        throw Error(ErrorKind::FieldTooSmall,
                    fmt::format("q = {} < n+m-1 = {}; allow_small_field overrides", q, n + m - 1));
    }
}

// The first `distinct` variables are evaluation points and must differ.
std::vector<FieldElem> search(const RootFamily& F, const GaloisField& field, const SearchOptions& options,
                              int distinct) {
    switch (options.strategy) {
        case SearchStrategy::Greedy: return PointSearch(F, field, options.budget, false, distinct).run();
        case SearchStrategy::Exhaustive: return PointSearch(F, field, options.budget, true, distinct).run();
        case SearchStrategy::Random: return random_search(F, field, options, distinct);
        case SearchStrategy::Auto:
            try {
                return PointSearch(F, field, options.budget, false, distinct).run();
            } catch (const NotFoundError&) {
                return PointSearch(F, field, options.budget, true, distinct).run();
            }
    }
    throw Error(ErrorKind::InvalidInput, "unknown search strategy");
}

}  // namespace

FieldMatrix vandermonde(const GaloisField& field, std::span<const FieldElem> points, int m) {
    if (m < 1 || points.empty()) throw Error(ErrorKind::InvalidInput, "vandermonde needs m >= 1 and a point");
    const int n = static_cast<int>(points.size());
    FieldMatrix V(field, m, n);
    for (int j = 0; j < n; ++j) {
        FieldElem power = field.one();
        for (int i = 0; i < m; ++i) {
            V.at(i, j) = power;
            power = field.mul(power, points[static_cast<std::size_t>(j)]);
        }
    }
    return V;
}

FieldMatrix transformation(const RootFamily& F, const GaloisField& field, std::span<const FieldElem> points) {
    const int m = F.m();
    FieldMatrix T(field, m, m);
    for (int i = 1; i <= m; ++i) {
        std::vector<FieldElem> roots;
        for (int v : F.set(i).elements()) {
            if (v > static_cast<int>(points.size())) {
                throw Error(ErrorKind::MissingAssignment, fmt::format("no value for a{}", v));
            }
            roots.push_back(points[static_cast<std::size_t>(v - 1)]);
        }
        const auto coeffs = root_poly_values(field, roots, m);
        for (int j = 0; j < m; ++j) T.at(i - 1, j) = coeffs[static_cast<std::size_t>(j)];
    }
    return T;
}

FieldMatrix transformation(const RootFamily& F, const GaloisField& field, const Assignment& points) {
    std::vector<FieldElem> dense(static_cast<std::size_t>(F.n()), field.zero());
    std::uint64_t needed = 0;
    for (auto s : F.sets()) needed |= s.bits();
    for (int v : RootSet(needed).elements()) {
        auto it = points.find(v);
        if (it == points.end()) throw Error(ErrorKind::MissingAssignment, fmt::format("no value for a{}", v));
        dense[static_cast<std::size_t>(v - 1)] = field.element(it->second.code);
    }
    return transformation(F, field, dense);
}

std::vector<FieldElem> find_points(const RootFamily& F, const GaloisField& field, const SearchOptions& options) {
    check_field_size(F.n(), F.m(), field, options.allow_small_field);
    return search(F, field, options, F.n());
}

RootFamily complete_family(const RootFamily& F) {
    const int m = F.m();
    int next = F.n();
    std::vector<RootSet> sets;
    for (RootSet s : F.sets()) {
        for (int k = s.size(); k < m - 1; ++k) {
            if (next >= 64) throw Error(ErrorKind::InvalidInput, "completion needs more than 64 variables");
            s = s | RootSet(std::uint64_t{1} << next++);
        }
        sets.push_back(s);
    }
    return RootFamily(next, std::move(sets));
}

MdsReport verify_mds(const FieldMatrix& G, const SupportMatrix& M) {
    if (G.rows() != M.m() || G.cols() != M.n()) {
        throw Error(ErrorKind::SizeMismatch,
                    fmt::format("G is {}x{} but M is {}x{}", G.rows(), G.cols(), M.m(), M.n()));
    }
    const int m = G.rows(), n = G.cols();
    MdsReport report;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (!M.at(i, j) && G.at(i - 1, j - 1).code != 0) report.fit_violations.emplace_back(i, j);
        }
    }
    std::vector<int> cols(static_cast<std::size_t>(m));
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<FieldElem> scratch(static_cast<std::size_t>(m * m));
    while (true) {
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) scratch[static_cast<std::size_t>(r * m + c)] = G.at(r, cols[static_cast<std::size_t>(c)]);
        }
        const FieldElem d = det_inplace(G.field(), scratch, m);
        report.minors.push_back(d);
        ++report.minors_checked;
        if (d.code == 0) {
            std::vector<int> set;
            for (int c : cols) set.push_back(c + 1);
            report.singular_columns.push_back(std::move(set));
        }
        // Next m-combination of [0, n) in lexicographic order.
        int i = m - 1;
        while (i >= 0 && cols[static_cast<std::size_t>(i)] == n - m + i) --i;
        if (i < 0) break;
        ++cols[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
    }
    report.passed = report.fit_violations.empty() && report.singular_columns.empty();
    return report;
}

CodeInstance build_code(const SupportMatrix& M, std::uint64_t q, const SearchOptions& options) {
    const MdsCheck condition = mds_condition(M);
    if (!condition.satisfied) throw NotMdsConditionError(condition.witness);
    RootFamily F = to_root_family(M);
    GaloisField field = make_field(q);

    std::vector<std::string> warnings;
    if (q < static_cast<std::uint64_t>(M.n() + M.m() - 1) && options.allow_small_field) {
        warnings.push_back(fmt::format("q = {} is below n+m-1 = {}", q, M.n() + M.m() - 1));
    }
    check_field_size(M.n(), M.m(), field, options.allow_small_field);
    RootFamily construction = F;
    bool completed = false;
    if (options.complete_rows && is_identically_zero(w_polynomial(F))) {
        construction = complete_family(F);
        completed = !(construction == F);
    }
    if (completed) warnings.push_back("W vanishes identically; short rows completed with extra roots");
    auto values = search(construction, field, options, M.n());
    std::vector<FieldElem> points(values.begin(), values.begin() + M.n());
    std::vector<FieldElem> extra(values.begin() + M.n(), values.end());
    FieldMatrix T = transformation(construction, field, values);
    FieldMatrix V = vandermonde(field, points, M.m());
    FieldMatrix G = T * V;
    const FieldElem det_T = det(T);
    if (det_T.code == 0) throw Error(ErrorKind::InvariantViolation, "search returned points with det(T) = 0");

    for (int i = 1; i <= M.m(); ++i) {
        for (int j = 1; j <= M.n(); ++j) {
            FieldElem expected = field.one();
            for (int g : construction.set(i).elements()) {
                expected = field.mul(expected, field.sub(points[static_cast<std::size_t>(j - 1)],
                                                         values[static_cast<std::size_t>(g - 1)]));
            }
            if (G.at(i - 1, j - 1) != expected) {
                throw Error(ErrorKind::InvariantViolation, fmt::format("G[{},{}] differs from P{}(a{})", i, j, i, j));
            }
        }
    }
    MdsReport report = verify_mds(G, M);
    return CodeInstance{M,        std::move(F),      std::move(construction), completed,
                        std::move(extra), std::move(field), std::move(points),   std::move(T),
                        std::move(V),     std::move(G),     det_T,               std::move(report),
                        std::move(warnings)};
}

bool w_probably_zero(const RootFamily& F, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
    static const GaloisField probe(kProbePrime, {0, 1});
    Rng rng(seed);
    std::vector<FieldElem> point(static_cast<std::size_t>(F.n()));
    for (int t = 0; t < trials; ++t) {
        for (auto& v : point) v = FieldElem{rng.below(kProbePrime)};
        if (det(transformation(F, probe, point)).code != 0) return false;
    }
    return true;
}

}  // namespace gmmds
