#include "gmmds/multipoly.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include <fmt/format.h>

#include "gmmds/error.hpp"
#include "gmmds/rng.hpp"

namespace gmmds {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "coefficient addition");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "coefficient multiplication");
    return out;
}

void check_var(int var, int nvars) {
    if (var < 1 || var > nvars) {
        throw Error(ErrorKind::InvalidInput, fmt::format("variable a{} outside [1, {}]", var, nvars));
    }
}

}  // namespace

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (const auto& [var, exp] : factors) {
        if (exp == 0) continue;
        if (!factors_.empty() && factors_.back().first == var) {
            factors_.back().second = static_cast<std::uint16_t>(factors_.back().second + exp);
        } else {
            factors_.emplace_back(var, exp);
        }
        degree_ += exp;
    }
}

Monomial Monomial::variable(int var, int exponent) {
    return Monomial({{static_cast<std::uint16_t>(var), static_cast<std::uint16_t>(exponent)}});
}

int Monomial::exponent(int var) const noexcept {
    for (const auto& [v, e] : factors_) {
        if (v == var) return e;
        if (v > var) break;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + rhs.factors_.size());
    auto a = factors_.begin();
    auto b = rhs.factors_.begin();
    while (a != factors_.end() || b != rhs.factors_.end()) {
        if (b == rhs.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            out.factors_.emplace_back(a->first, static_cast<std::uint16_t>(a->second + b->second));
            ++a;
            ++b;
        }
    }
    out.degree_ = degree_ + rhs.degree_;
    return out;
}

Monomial Monomial::with_exponent(int var, int exponent) const {
    std::vector<Factor> factors;
    factors.reserve(factors_.size() + 1);
    bool placed = false;
    for (const auto& f : factors_) {
        if (f.first == var) {
            placed = true;
            if (exponent > 0) factors.emplace_back(f.first, static_cast<std::uint16_t>(exponent));
        } else {
            factors.push_back(f);
        }
    }
    if (!placed && exponent > 0) {
        factors.emplace_back(static_cast<std::uint16_t>(var), static_cast<std::uint16_t>(exponent));
    }
    return Monomial(std::move(factors));
}

bool GrlexFirst::operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    const std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    // Equal degree and one factor list a prefix of the other means equal.
    return false;
}

MultiPoly MultiPoly::constant(int nvars, std::int64_t c) {
    MultiPoly out(nvars);
    out.add_term(Monomial{}, c);
    return out;
}

MultiPoly MultiPoly::variable(int nvars, int var) {
    check_var(var, nvars);
    MultiPoly out(nvars);
    out.add_term(Monomial::variable(var), 1);
    return out;
}

std::int64_t MultiPoly::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? 0 : it->second;
}

int MultiPoly::total_degree() const noexcept {
    return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

int MultiPoly::degree_in(int var) const noexcept {
    int best = 0;
    for (const auto& [mono, c] : terms_) best = std::max(best, mono.exponent(var));
    return best;
}

void MultiPoly::add_term(const Monomial& mono, std::int64_t c) {
    if (c == 0) return;
    if (mono.max_variable() > nvars_) check_var(mono.max_variable(), nvars_);
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (inserted) return;
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    nvars_ = std::max(nvars_, rhs.nvars_);
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    nvars_ = std::max(nvars_, rhs.nvars_);
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, checked_mul(c, -1));
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    MultiPoly out = *this;
    out += rhs;
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const {
    MultiPoly out = *this;
    out -= rhs;
    return out;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::scaled(std::int64_t c) const {
    MultiPoly out(nvars_);
    if (c == 0) return out;
    for (const auto& [mono, coef] : terms_) out.terms_.emplace_hint(out.terms_.end(), mono, checked_mul(coef, c));
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    MultiPoly out(std::max(nvars_, rhs.nvars_));
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, checked_mul(ca, cb));
    }
    return out;
}

UniPolyOverRing build_P(std::span<const int> roots, int m, int nvars) {
    if (m < 1) throw Error(ErrorKind::InvalidInput, "m must be positive");
    if (static_cast<int>(roots.size()) > m - 1) {
        throw Error(ErrorKind::DegreeTooHigh,
                    fmt::format("{} roots but polynomials are limited to degree m-1 = {}", roots.size(), m - 1));
    }
    // coeffs[j] is the coefficient of a^j; multiply in one (a - a_g) at a time.
    std::vector<MultiPoly> coeffs(static_cast<std::size_t>(m), MultiPoly(nvars));
    coeffs[0] = MultiPoly::constant(nvars, 1);
    int degree = 0;
    for (int g : roots) {
        check_var(g, nvars);
        const MultiPoly minus_root = MultiPoly::variable(nvars, g).scaled(-1);
        for (int j = degree + 1; j >= 0; --j) {
            MultiPoly next(nvars);
            if (j >= 1) next += coeffs[static_cast<std::size_t>(j - 1)];
            if (j <= degree) next += coeffs[static_cast<std::size_t>(j)] * minus_root;
            coeffs[static_cast<std::size_t>(j)] = std::move(next);
        }
        ++degree;
    }
    return UniPolyOverRing{std::move(coeffs)};
}

MultiPoly wdet(std::span<const UniPolyOverRing> polys) {
    const int m = static_cast<int>(polys.size());
    if (m == 0) throw Error(ErrorKind::SizeMismatch, "empty family");
    if (m > 20) throw Error(ErrorKind::SizeMismatch, "too many polynomials for cofactor expansion");
    int nvars = 0;
    for (const auto& p : polys) {
        if (p.m() != m) throw Error(ErrorKind::SizeMismatch, fmt::format("polynomial has {} coefficients, expected {}", p.m(), m));
        for (const auto& c : p.coeffs) nvars = std::max(nvars, c.nvars());
    }
    // minors[mask]: determinant of rows (m - |mask|) .. m-1 restricted to the
    // columns in mask. Entry (row, col) is coefficient `row` of P_col.
    const std::size_t full = (std::size_t{1} << m) - 1;
    std::vector<std::optional<MultiPoly>> minors(full + 1);
    minors[0] = MultiPoly::constant(nvars, 1);
    std::vector<std::size_t> order(full);
    for (std::size_t i = 0; i < full; ++i) order[i] = i + 1;
    std::stable_sort(order.begin(), order.end(),
                     [](std::size_t a, std::size_t b) { return std::popcount(a) < std::popcount(b); });
    for (std::size_t mask : order) {
        const int row = m - std::popcount(mask);
        MultiPoly acc(nvars);
        int below = 0;
        for (int col = 0; col < m; ++col) {
            if (!(mask & (std::size_t{1} << col))) continue;
            const MultiPoly& entry = polys[static_cast<std::size_t>(col)].coeffs[static_cast<std::size_t>(row)];
            const MultiPoly& sub = *minors[mask & ~(std::size_t{1} << col)];
            if (!entry.is_zero() && !sub.is_zero()) {
                if (below % 2 == 0) {
                    acc += entry * sub;
                } else {
                    acc -= entry * sub;
                }
            }
            ++below;
        }
        minors[mask] = std::move(acc);
    }
    return std::move(*minors[full]);
}

MultiPoly derivative(const MultiPoly& p, int var, int times) {
    check_var(var, std::max(p.nvars(), var));
    if (times < 1) throw Error(ErrorKind::InvalidInput, "derivative order must be >= 1");
    MultiPoly out(p.nvars());
    for (const auto& [mono, c] : p.terms()) {
        const int e = mono.exponent(var);
        if (e < times) continue;
        std::int64_t factor = 1;
        for (int i = 0; i < times; ++i) factor = checked_mul(factor, e - i);
        out.add_term(mono.with_exponent(var, e - times), checked_mul(c, factor));
    }
    return out;
}

MultiPoly hasse_derivative(const MultiPoly& p, int var, int times) {
    check_var(var, std::max(p.nvars(), var));
    if (times < 1) throw Error(ErrorKind::InvalidInput, "derivative order must be >= 1");
    MultiPoly out(p.nvars());
    for (const auto& [mono, c] : p.terms()) {
        const int e = mono.exponent(var);
        if (e < times) continue;
        // binomial(e, times), built incrementally so every step is exact.
        std::int64_t binom = 1;
        for (int i = 1; i <= times; ++i) binom = checked_mul(binom, e - times + i) / i;
        out.add_term(mono.with_exponent(var, e - times), checked_mul(c, binom));
    }
    return out;
}

bool is_identically_zero(const MultiPoly& p) noexcept { return p.is_zero(); }

namespace {

template <typename Lookup>
FieldElem eval_with(const MultiPoly& p, const GaloisField& field, Lookup&& value_of) {
    FieldElem sum = field.zero();
    for (const auto& [mono, c] : p.terms()) {
        FieldElem term = field.from_int(c);
        for (const auto& [var, exp] : mono.factors()) {
            term = field.mul(term, field.pow(value_of(var), exp));
        }
        sum = field.add(sum, term);
    }
    return sum;
}

}  // namespace

FieldElem eval(const MultiPoly& p, const Assignment& point, const GaloisField& field) {
    return eval_with(p, field, [&](int var) {
        auto it = point.find(var);
        if (it == point.end()) throw Error(ErrorKind::MissingAssignment, fmt::format("no value for a{}", var));
        return field.element(it->second.code);
    });
}

FieldElem eval(const MultiPoly& p, std::span<const FieldElem> point, const GaloisField& field) {
    return eval_with(p, field, [&](int var) {
        if (var > static_cast<int>(point.size())) {
            throw Error(ErrorKind::MissingAssignment, fmt::format("no value for a{}", var));
        }
        return point[static_cast<std::size_t>(var - 1)];
    });
}

bool probably_zero(const MultiPoly& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
    if (p.is_zero()) return true;
    static const GaloisField probe(kProbePrime, {0, 1});
    int nvars = p.nvars();
    for (const auto& [mono, c] : p.terms()) nvars = std::max(nvars, mono.max_variable());
    Rng rng(seed);
    std::vector<FieldElem> point(static_cast<std::size_t>(nvars));
    for (int t = 0; t < trials; ++t) {
        for (auto& v : point) v = FieldElem{rng.below(kProbePrime)};
        if (eval(p, point, probe).code != 0) return false;
    }
    return true;
}

std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [mono, c] : p.terms()) {
        if (!out.empty()) out += ' ';
        out += fmt::format("{:+d}", c);
        for (const auto& [var, exp] : mono.factors()) {
            out += fmt::format("*a{}", var);
            if (exp > 1) out += fmt::format("^{}", exp);
        }
    }
    return out;
}

}  // namespace gmmds
