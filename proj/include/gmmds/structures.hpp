#pragma once

// Support matrices, root families and the combinatorial predicates on them:
// the MDS condition, RP/GRP and (r,s)-subsets.
//
// Variable and polynomial indices are 1-based at every public boundary.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmmds {

/// Subset of {1..64}; bit (v-1) marks variable a_v.
class RootSet {
public:
    constexpr RootSet() = default;
    constexpr explicit RootSet(std::uint64_t bits) : bits_(bits) {}
    static RootSet of(const std::vector<int>& vars);

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr bool contains(int var) const noexcept { return (bits_ >> (var - 1)) & 1U; }
    constexpr bool subset_of(RootSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    /// Largest variable index present, 0 if empty.
    constexpr int max_var() const noexcept { return 64 - std::countl_zero(bits_); }

    std::vector<int> elements() const;

    constexpr RootSet operator&(RootSet o) const noexcept { return RootSet(bits_ & o.bits_); }
    constexpr RootSet operator|(RootSet o) const noexcept { return RootSet(bits_ | o.bits_); }
    constexpr RootSet without(RootSet o) const noexcept { return RootSet(bits_ & ~o.bits_); }

    friend constexpr bool operator==(RootSet, RootSet) = default;

private:
    std::uint64_t bits_ = 0;
};

/// Orders root sets by their sorted element lists, lexicographically.
bool lex_less(RootSet a, RootSet b) noexcept;

std::string format_set(RootSet s);

class SupportMatrix {
public:
    /// rows[i] bit j marks M_{i+1, j+1} = 1. Checks 1 < m <= n <= 64.
    SupportMatrix(int n, std::vector<std::uint64_t> rows);
    static SupportMatrix from_bits(const std::vector<std::vector<int>>& bits);

    int m() const noexcept { return static_cast<int>(rows_.size()); }
    int n() const noexcept { return n_; }
    bool at(int row, int col) const noexcept { return (rows_[static_cast<std::size_t>(row - 1)] >> (col - 1)) & 1U; }
    std::uint64_t row_mask(int row) const noexcept { return rows_[static_cast<std::size_t>(row - 1)]; }
    int support_size(int row) const noexcept { return std::popcount(row_mask(row)); }

    /// Rows rendered as "0"/"1" strings.
    std::vector<std::string> row_strings() const;

    friend bool operator==(const SupportMatrix&, const SupportMatrix&) = default;

private:
    int n_;
    std::vector<std::uint64_t> rows_;
};

/// Structural problems that the constructor leaves to the caller, e.g. empty rows.
std::vector<std::string> validate(const SupportMatrix& M);

class RootFamily {
public:
    /// Checks every root in [1, n] and every degree <= m-1 (DegreeTooHigh).
    RootFamily(int n, std::vector<RootSet> sets);
    static RootFamily from_lists(int n, const std::vector<std::vector<int>>& sets);

    int n() const noexcept { return n_; }
    int m() const noexcept { return static_cast<int>(sets_.size()); }
    const std::vector<RootSet>& sets() const noexcept { return sets_; }
    RootSet set(int i) const noexcept { return sets_[static_cast<std::size_t>(i - 1)]; }
    int degree(int i) const noexcept { return set(i).size(); }
    std::vector<int> degrees() const;
    int max_degree() const noexcept;

    friend bool operator==(const RootFamily&, const RootFamily&) = default;

private:
    int n_;
    std::vector<RootSet> sets_;
};

/// Problems with 1 < m <= n <= m(m-1) and "some d_i = m-1". The n <= m(m-1)
/// bound is skipped when allow_loose_n is set.
std::vector<std::string> validate_bounds(const RootFamily& F, bool allow_loose_n);

std::string format_family(const RootFamily& F);

struct MdsCheck {
    bool satisfied = true;
    /// First violating row set I (1-based) in subset-mask order.
    std::vector<int> witness;
};

MdsCheck mds_condition(const SupportMatrix& M);

/// N_i = complement of supp(M_i). Throws DegreeTooHighError naming the row.
RootFamily to_root_family(const SupportMatrix& M);

struct PropertyWitness {
    std::vector<int> polys;  // 1-based indices, |polys| = k
    int l = 0;               // slack; always 0 for RP
    RootSet common;
};

/// Rectangular property; requires all degrees m-1 (DegreesNotUniform).
std::optional<PropertyWitness> has_rp(const RootFamily& F);

/// Generalized rectangular property. The slack l ranges over 0..m-k+1 (see
/// README); per subset only the largest feasible l is tried, since raising l
/// weakens the common-root requirement.
std::optional<PropertyWitness> has_grp(const RootFamily& F);

/// Polynomial membership is a bitmask: bit (i-1) for P_i.
struct RSSubset {
    RootSet elements;
    std::uint32_t members = 0;

    int r() const noexcept { return std::popcount(members); }
    int s() const noexcept { return elements.size(); }
    std::vector<int> member_list() const;

    friend bool operator==(const RSSubset&, const RSSubset&) = default;
};

inline constexpr std::uint32_t all_polys(int m) { return m >= 32 ? ~0U : (1U << m) - 1U; }

/// Every nonempty S contained in some N_i with i in scope, each with its full
/// membership within scope. Sorted by lex_less on the elements.
std::vector<RSSubset> all_rs_subsets(const RootFamily& F, std::uint32_t scope);

/// Ranks (r,s)-subsets: larger r+s is higher, ties go to larger r.
std::strong_ordering higher_order(const RSSubset& a, const RSSubset& b) noexcept;

}  // namespace gmmds
