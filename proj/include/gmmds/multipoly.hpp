#pragma once

// Sparse multivariate polynomials with int64 coefficients in the
// indeterminates a1..an, plus the univariate-over-ring view used for the
// root polynomials P_i(a) = prod_{g in N_i} (a - g).

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmmds/field.hpp"

namespace gmmds {

/// Product of powers a_v^e with e > 0, sorted by variable index (1-based).
class Monomial {
public:
    using Factor = std::pair<std::uint16_t, std::uint16_t>;  // (variable, exponent)

    Monomial() = default;
    /// Zero exponents are dropped; duplicate variables are merged.
    explicit Monomial(std::vector<Factor> factors);
    static Monomial variable(int var, int exponent = 1);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    int total_degree() const noexcept { return degree_; }
    int exponent(int var) const noexcept;
    bool is_one() const noexcept { return factors_.empty(); }
    int max_variable() const noexcept { return factors_.empty() ? 0 : factors_.back().first; }

    Monomial operator*(const Monomial& rhs) const;
    /// Same monomial with a_var's exponent replaced (0 removes it).
    Monomial with_exponent(int var, int exponent) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

/// Graded lexicographic order, largest first: higher total degree first, then
/// the larger exponent of the lowest-indexed variable where they differ.
struct GrlexFirst {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class MultiPoly {
public:
    using Terms = std::map<Monomial, std::int64_t, GrlexFirst>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, std::int64_t c);
    static MultiPoly variable(int nvars, int var);

    int nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::int64_t coefficient(const Monomial& mono) const;
    int total_degree() const noexcept;
    int degree_in(int var) const noexcept;

    /// Adds c * mono, normalizing away zero coefficients.
    void add_term(const Monomial& mono, std::int64_t c);

    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly scaled(std::int64_t c) const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

private:
    int nvars_ = 0;
    Terms terms_;
};

/// P(a) = sum_j coeffs[j] a^j with coefficients in Z[a1..an]; always length m.
struct UniPolyOverRing {
    std::vector<MultiPoly> coeffs;

    int m() const noexcept { return static_cast<int>(coeffs.size()); }
};

/// Expansion of prod_{g in roots} (a - a_g) padded to m coefficients.
/// Throws DegreeTooHigh when |roots| > m-1.
UniPolyOverRing build_P(std::span<const int> roots, int m, int nvars);

/// det of the m x m matrix whose column j holds the coefficients of P_j.
/// Cofactor expansion over column subsets with memoized minors.
MultiPoly wdet(std::span<const UniPolyOverRing> polys);

MultiPoly derivative(const MultiPoly& p, int var, int times);
/// Divided derivative: derivative(p, var, times) / times!, exact over Z.
MultiPoly hasse_derivative(const MultiPoly& p, int var, int times);

bool is_identically_zero(const MultiPoly& p) noexcept;

using Assignment = std::map<int, FieldElem>;

/// Coefficients are reduced into the prime subfield of `field`.
/// Throws MissingAssignment if a variable of p has no value.
FieldElem eval(const MultiPoly& p, const Assignment& point, const GaloisField& field);
/// Dense variant: point[v-1] is the value of a_v.
FieldElem eval(const MultiPoly& p, std::span<const FieldElem> point, const GaloisField& field);

/// Prime used by the randomized zero test (2^31 - 1).
inline constexpr std::uint64_t kProbePrime = 2147483647ULL;

/// Evaluates p at `trials` uniform points over GF(kProbePrime). False on any
/// nonzero value; deterministic for a given seed.
bool probably_zero(const MultiPoly& p, int trials, std::uint64_t seed);

/// Canonical text, terms in graded-lex order: "+1*a1*a2 -1*a3^2"; zero is "0".
std::string to_string(const MultiPoly& p);

}  // namespace gmmds
