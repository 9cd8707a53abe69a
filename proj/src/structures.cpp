#include "gmmds/structures.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gmmds/error.hpp"

namespace gmmds {

namespace {

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::vector<int> mask_to_list(std::uint64_t mask) {
    std::vector<int> out;
    while (mask != 0) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

RootSet RootSet::of(const std::vector<int>& vars) {
    std::uint64_t bits = 0;
    for (int v : vars) {
        if (v < 1 || v > 64) throw Error(ErrorKind::InvalidInput, fmt::format("variable index {} outside [1, 64]", v));
        bits |= std::uint64_t{1} << (v - 1);
    }
    return RootSet(bits);
}

std::vector<int> RootSet::elements() const { return mask_to_list(bits_); }

bool lex_less(RootSet a, RootSet b) noexcept {
    std::uint64_t x = a.bits(), y = b.bits();
    while (x != 0 && y != 0) {
        const int ex = std::countr_zero(x), ey = std::countr_zero(y);
        if (ex != ey) return ex < ey;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

std::string format_set(RootSet s) { return fmt::format("{{{}}}", fmt::join(s.elements(), ",")); }

SupportMatrix::SupportMatrix(int n, std::vector<std::uint64_t> rows) : n_(n), rows_(std::move(rows)) {
    const int m = static_cast<int>(rows_.size());
    if (n_ < 1 || n_ > 64) throw Error(ErrorKind::InvalidInput, fmt::format("n = {} outside [1, 64]", n_));
    if (m < 2 || m > n_) throw Error(ErrorKind::InvalidInput, fmt::format("need 1 < m <= n, got m = {}, n = {}", m, n_));
    for (auto row : rows_) {
        if ((row & ~low_bits(n_)) != 0) throw Error(ErrorKind::InvalidInput, "row has bits beyond column n");
    }
}

SupportMatrix SupportMatrix::from_bits(const std::vector<std::vector<int>>& bits) {
    if (bits.empty()) throw Error(ErrorKind::InvalidInput, "empty matrix");
    const int n = static_cast<int>(bits.front().size());
    std::vector<std::uint64_t> rows;
    for (const auto& row : bits) {
        if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
        if (n > 64) throw Error(ErrorKind::InvalidInput, "more than 64 columns");
        std::uint64_t mask = 0;
        for (int j = 0; j < n; ++j) {
            if (row[static_cast<std::size_t>(j)] != 0 && row[static_cast<std::size_t>(j)] != 1) {
                throw Error(ErrorKind::InvalidInput, "matrix entries must be 0 or 1");
            }
            if (row[static_cast<std::size_t>(j)] == 1) mask |= std::uint64_t{1} << j;
        }
        rows.push_back(mask);
    }
    return SupportMatrix(n, std::move(rows));
}

std::vector<std::string> SupportMatrix::row_strings() const {
    std::vector<std::string> out;
    for (auto row : rows_) {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int j = 0; j < n_; ++j) {
            if ((row >> j) & 1U) s[static_cast<std::size_t>(j)] = '1';
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::string> validate(const SupportMatrix& M) {
    std::vector<std::string> issues;
    for (int i = 1; i <= M.m(); ++i) {
        if (M.row_mask(i) == 0) issues.push_back(fmt::format("row {} has empty support", i));
    }
    return issues;
}

RootFamily::RootFamily(int n, std::vector<RootSet> sets) : n_(n), sets_(std::move(sets)) {
    if (n_ < 1 || n_ > 64) throw Error(ErrorKind::InvalidInput, fmt::format("n = {} outside [1, 64]", n_));
    if (sets_.empty() || sets_.size() > 31) throw Error(ErrorKind::InvalidInput, "family needs 1..31 polynomials");
    const int m = static_cast<int>(sets_.size());
    for (int i = 0; i < m; ++i) {
        const RootSet s = sets_[static_cast<std::size_t>(i)];
        if ((s.bits() & ~low_bits(n_)) != 0) {
            throw Error(ErrorKind::InvalidInput, fmt::format("N{} uses a variable beyond a{}", i + 1, n_));
        }
        if (s.size() > m - 1) throw DegreeTooHighError(i + 1, s.size(), m - 1);
    }
}

RootFamily RootFamily::from_lists(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<RootSet> out;
    for (const auto& list : sets) {
        for (int v : list) {
            if (v < 1 || v > n) throw Error(ErrorKind::InvalidInput, fmt::format("root a{} outside [1, {}]", v, n));
        }
        const RootSet s = RootSet::of(list);
        if (s.size() != static_cast<int>(list.size())) throw Error(ErrorKind::InvalidInput, "repeated root in a set");
        out.push_back(s);
    }
    return RootFamily(n, std::move(out));
}

std::vector<int> RootFamily::degrees() const {
    std::vector<int> out;
    for (auto s : sets_) out.push_back(s.size());
    return out;
}

int RootFamily::max_degree() const noexcept {
    int best = 0;
    for (auto s : sets_) best = std::max(best, s.size());
    return best;
}

std::vector<std::string> validate_bounds(const RootFamily& F, bool allow_loose_n) {
    std::vector<std::string> issues;
    const int m = F.m(), n = F.n();
    if (m < 2) issues.push_back(fmt::format("need m > 1, got m = {}", m));
    if (n < m) issues.push_back(fmt::format("need m <= n, got m = {}, n = {}", m, n));
    if (!allow_loose_n && n > m * (m - 1)) issues.push_back(fmt::format("n = {} exceeds m(m-1) = {}", n, m * (m - 1)));
    if (F.max_degree() != m - 1) issues.push_back(fmt::format("no polynomial has degree m-1 = {}", m - 1));
    return issues;
}

std::string format_family(const RootFamily& F) {
    std::vector<std::string> parts;
    for (auto s : F.sets()) parts.push_back(format_set(s));
    return fmt::format("n={} [{}]", F.n(), fmt::join(parts, " "));
}

MdsCheck mds_condition(const SupportMatrix& M) {
    const int m = M.m(), n = M.n();
    for (std::uint32_t I = 1; I <= all_polys(m); ++I) {
        std::uint64_t uni = 0;
        for (int i = 0; i < m; ++i) {
            if ((I >> i) & 1U) uni |= M.row_mask(i + 1);
        }
        if (std::popcount(uni) < n - m + std::popcount(I)) {
            std::vector<int> witness;
            for (int i = 0; i < m; ++i) {
                if ((I >> i) & 1U) witness.push_back(i + 1);
            }
            return {false, std::move(witness)};
        }
    }
    return {true, {}};
}

RootFamily to_root_family(const SupportMatrix& M) {
    const int m = M.m(), n = M.n();
    std::vector<RootSet> sets;
    for (int i = 1; i <= m; ++i) {
        const RootSet N(~M.row_mask(i) & low_bits(n));
        if (N.size() > m - 1) throw DegreeTooHighError(i, N.size(), m - 1);
        sets.push_back(N);
    }
    return RootFamily(n, std::move(sets));
}

namespace {

RootSet intersection(const RootFamily& F, std::uint32_t polys) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (int i = 0; i < F.m(); ++i) {
        if ((polys >> i) & 1U) acc &= F.sets()[static_cast<std::size_t>(i)].bits();
    }
    return RootSet(acc);
}

PropertyWitness make_witness(std::uint32_t polys, int l, RootSet common) {
    PropertyWitness w;
    w.polys = mask_to_list(polys);
    w.l = l;
    w.common = common;
    return w;
}

}  // namespace

std::optional<PropertyWitness> has_rp(const RootFamily& F) {
    const int m = F.m();
    for (int i = 1; i <= m; ++i) {
        if (F.degree(i) != m - 1) {
            throw Error(ErrorKind::DegreesNotUniform, fmt::format("P{} has degree {}, expected {}", i, F.degree(i), m - 1));
        }
    }
    for (std::uint32_t Q = 1; Q <= all_polys(m); ++Q) {
        const int k = std::popcount(Q);
        if (k < 2) continue;
        const RootSet common = intersection(F, Q);
        if (common.size() >= m - k + 1) return make_witness(Q, 0, common);
    }
    return std::nullopt;
}

std::optional<PropertyWitness> has_grp(const RootFamily& F) {
    const int m = F.m();
    for (std::uint32_t Q = 1; Q <= all_polys(m); ++Q) {
        const int k = std::popcount(Q);
        if (k < 2) continue;
        int max_deg = 0;
        for (int i = 0; i < m; ++i) {
            if ((Q >> i) & 1U) max_deg = std::max(max_deg, F.sets()[static_cast<std::size_t>(i)].size());
        }
        // Degrees <= m-l-1 caps l; the requirement m-k-l+1 only drops as l grows.
        const int l = std::min(m - k + 1, m - 1 - max_deg);
        if (l < 0) continue;
        const RootSet common = intersection(F, Q);
        if (common.size() >= m - k - l + 1) return make_witness(Q, l, common);
    }
    return std::nullopt;
}

std::vector<int> RSSubset::member_list() const { return mask_to_list(members); }

std::vector<RSSubset> all_rs_subsets(const RootFamily& F, std::uint32_t scope) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<RSSubset> out;
    for (int i = 0; i < F.m(); ++i) {
        if (!((scope >> i) & 1U)) continue;
        const std::uint64_t N = F.sets()[static_cast<std::size_t>(i)].bits();
        for (std::uint64_t S = N; S != 0; S = (S - 1) & N) {
            if (!seen.insert(S).second) continue;
            std::uint32_t members = 0;
            for (int j = 0; j < F.m(); ++j) {
                if (((scope >> j) & 1U) && (S & ~F.sets()[static_cast<std::size_t>(j)].bits()) == 0) {
                    members |= 1U << j;
                }
            }
            out.push_back({RootSet(S), members});
        }
    }
    std::sort(out.begin(), out.end(), [](const RSSubset& a, const RSSubset& b) { return lex_less(a.elements, b.elements); });
    return out;
}

std::strong_ordering higher_order(const RSSubset& a, const RSSubset& b) noexcept {
    if (auto c = (a.r() + a.s()) <=> (b.r() + b.s()); c != 0) return c;
    return a.r() <=> b.r();
}

}  // namespace gmmds
