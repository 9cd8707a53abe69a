#pragma once

// GRS construction of a generator matrix fitting a support matrix:
// G = T V with V the m x n Vandermonde matrix on the evaluation points and T
// the coefficient matrix of the root polynomials, so that G_{i,j} = P_i(a_j).

#include <cstdint>
#include <string>
#include <vector>

#include "gmmds/field.hpp"
#include "gmmds/multipoly.hpp"
#include "gmmds/structures.hpp"

namespace gmmds {

/// m x n matrix with entry (i, j) = points[j]^(i-1).
FieldMatrix vandermonde(const GaloisField& field, std::span<const FieldElem> points, int m);

/// m x m matrix whose row i holds the coefficients of P_i evaluated at the
/// points, so det(T) = W(P_1..P_m) at the points. points[v-1] is the value of a_v.
FieldMatrix transformation(const RootFamily& F, const GaloisField& field, std::span<const FieldElem> points);
/// Sparse variant; throws MissingAssignment if a root of F has no value.
FieldMatrix transformation(const RootFamily& F, const GaloisField& field, const Assignment& points);

enum class SearchStrategy {
    Auto,        // greedy, then exhaustive if greedy dead-ends
    Greedy,      // one point at a time, keeping the partial W nonzero
    Exhaustive,  // depth-first over ordered selections with the same pruning
    Random,      // seeded distinct tuples
};

struct SearchOptions {
    SearchStrategy strategy = SearchStrategy::Auto;
    std::uint64_t seed = 0;
    std::uint64_t budget = 10'000'000;  // candidate values (or tuples for Random)
    bool allow_small_field = false;     // permit n <= q < n+m-1
    /// When W of the root family vanishes identically, give every row with
    /// fewer than m-1 roots extra roots at fresh indeterminates that are not
    /// evaluation points, and search over those as well.
    bool complete_rows = true;
};

/// Distinct points a*_1..a*_n with det(T) != 0; the first such tuple in
/// lexicographic code order for the deterministic strategies.
/// Throws FieldTooSmall (q < n, or q < n+m-1 without allow_small_field) and
/// NotFoundError.
std::vector<FieldElem> find_points(const RootFamily& F, const GaloisField& field, const SearchOptions& options = {});

/// F with each set topped up to m-1 roots by fresh variables a_{n+1}, ...,
/// assigned row by row. The MDS condition of the matching support matrix is
/// unchanged, and each extra variable lies in exactly one set.
RootFamily complete_family(const RootFamily& F);

struct MdsReport {
    bool passed = true;
    int minors_checked = 0;
    /// det of every m x m minor, columns in lexicographic order.
    std::vector<FieldElem> minors;
    std::vector<std::vector<int>> singular_columns;     // 1-based column sets
    std::vector<std::pair<int, int>> fit_violations;    // 1-based (row, col)
};

/// Exhaustive over all C(n, m) column sets plus the support fit.
MdsReport verify_mds(const FieldMatrix& G, const SupportMatrix& M);

struct CodeInstance {
    SupportMatrix M;
    RootFamily F;
    /// Family the construction used: F itself, or complete_family(F) when
    /// the plain root polynomials had W identically zero.
    RootFamily construction;
    bool completed = false;
    /// Values of the extra roots of a completed construction.
    std::vector<FieldElem> extra_roots;
    GaloisField field;
    std::vector<FieldElem> points;
    FieldMatrix T;
    FieldMatrix V;
    FieldMatrix G;
    FieldElem det_T;
    MdsReport report;
    std::vector<std::string> warnings;
};

/// Full pipeline. Throws NotMdsConditionError with the violating row set,
/// and propagates search errors. Entry (i, j) of G is the i-th construction
/// polynomial at a_j, which vanishes on N_i.
CodeInstance build_code(const SupportMatrix& M, std::uint64_t q, const SearchOptions& options = {});

/// Randomized W == 0 test through det(T) at uniform points of GF(2^31 - 1).
bool w_probably_zero(const RootFamily& F, int trials, std::uint64_t seed);

}  // namespace gmmds
