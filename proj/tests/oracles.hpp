#pragma once

// Independent reference implementations used only by the tests. They follow
// the definitions literally and are deliberately slow.

#include <algorithm>
#include <numeric>
#include <vector>

#include "gmmds/field.hpp"
#include "gmmds/multipoly.hpp"
#include "gmmds/rng.hpp"
#include "gmmds/structures.hpp"

namespace oracle {

using namespace gmmds;

inline int perm_sign(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j] ? 1 : 0;
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// Leibniz expansion; cells[r][c].
inline MultiPoly leibniz(const std::vector<std::vector<MultiPoly>>& cells, int nvars) {
    const int m = static_cast<int>(cells.size());
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    MultiPoly sum(nvars);
    do {
        MultiPoly term = MultiPoly::constant(nvars, perm_sign(p));
        for (int r = 0; r < m; ++r) term = term * cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(p[static_cast<std::size_t>(r)])];
        sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

/// W from first principles: P_j = prod (a - a_g) expanded by repeated
/// multiplication with (a - a_g), then column j of the matrix is P_j.
inline MultiPoly w_leibniz(const std::vector<std::vector<int>>& sets, int m, int nvars) {
    std::vector<std::vector<MultiPoly>> cells(static_cast<std::size_t>(m),
                                              std::vector<MultiPoly>(static_cast<std::size_t>(m), MultiPoly(nvars)));
    for (int j = 0; j < m; ++j) {
        std::vector<MultiPoly> c{MultiPoly::constant(nvars, 1)};
        for (int g : sets[static_cast<std::size_t>(j)]) {
            std::vector<MultiPoly> next(c.size() + 1, MultiPoly(nvars));
            const MultiPoly minus_g = -MultiPoly::variable(nvars, g);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] += c[k] * minus_g;
            }
            c = std::move(next);
        }
        for (std::size_t k = 0; k < c.size(); ++k) cells[k][static_cast<std::size_t>(j)] = c[k];
    }
    return leibniz(cells, nvars);
}

/// Determinant over a field by Leibniz.
inline FieldElem field_det(const GaloisField& F, const std::vector<std::vector<FieldElem>>& a) {
    const int m = static_cast<int>(a.size());
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    FieldElem sum = F.zero();
    do {
        FieldElem term = perm_sign(p) == 1 ? F.one() : F.neg(F.one());
        for (int r = 0; r < m; ++r) term = F.mul(term, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(p[static_cast<std::size_t>(r)])]);
        sum = F.add(sum, term);
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

/// GF(2^k) product: carry-less multiply, then reduce by the modulus bits.
inline std::uint64_t gf2k_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus_bits, int k) {
    std::uint64_t r = 0;
    for (int i = 0; i < k; ++i) {
        if ((b >> i) & 1U) r ^= a << i;
    }
    for (int i = 2 * k - 2; i >= k; --i) {
        if ((r >> i) & 1U) r ^= modulus_bits << (i - k);
    }
    return r;
}

inline std::vector<std::uint64_t> bits_to_list(std::uint64_t bits) {
    std::vector<std::uint64_t> out;
    for (int v = 1; v <= 64; ++v) {
        if ((bits >> (v - 1)) & 1U) out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

/// MDS condition straight from the definition, over index lists.
inline bool mds_condition(const std::vector<std::vector<int>>& M) {
    const int m = static_cast<int>(M.size());
    const int n = static_cast<int>(M[0].size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        int size = 0, count = 0;
        for (int j = 0; j < n; ++j) {
            bool covered = false;
            for (int i = 0; i < m; ++i) covered = covered || (((mask >> i) & 1) && M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 1);
            size += covered ? 1 : 0;
        }
        for (int i = 0; i < m; ++i) count += (mask >> i) & 1;
        if (size < n - m + count) return false;
    }
    return true;
}

inline int common_roots(const RootFamily& F, const std::vector<int>& Q) {
    int count = 0;
    for (int v = 1; v <= F.n(); ++v) {
        bool all = true;
        for (int i : Q) all = all && F.set(i).contains(v);
        count += all ? 1 : 0;
    }
    return count;
}

inline std::vector<std::vector<int>> subsets_of_polys(int m, int min_size) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> Q;
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1) Q.push_back(i + 1);
        }
        if (static_cast<int>(Q.size()) >= min_size) out.push_back(Q);
    }
    return out;
}

/// k >= 2 polynomials sharing at least m-k+1 roots.
inline bool rp(const RootFamily& F) {
    for (const auto& Q : subsets_of_polys(F.m(), 2)) {
        if (common_roots(F, Q) >= F.m() - static_cast<int>(Q.size()) + 1) return true;
    }
    return false;
}

/// Every l in 0..m-k+1 tried explicitly.
inline bool grp(const RootFamily& F) {
    const int m = F.m();
    for (const auto& Q : subsets_of_polys(m, 2)) {
        const int k = static_cast<int>(Q.size());
        for (int l = 0; l <= m - k + 1; ++l) {
            bool degrees_ok = true;
            for (int i : Q) degrees_ok = degrees_ok && F.degree(i) <= m - l - 1;
            if (degrees_ok && common_roots(F, Q) >= m - k - l + 1) return true;
        }
    }
    return false;
}

/// Uniform random family with the given profile, drawn without the library.
inline RootFamily family(Rng& rng, int n, const std::vector<int>& profile) {
    std::vector<std::vector<int>> sets;
    for (int d : profile) {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        for (int i = 0; i < d; ++i) std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i))]);
        all.resize(static_cast<std::size_t>(d));
        std::sort(all.begin(), all.end());
        sets.push_back(all);
    }
    return RootFamily::from_lists(n, sets);
}

}  // namespace oracle
