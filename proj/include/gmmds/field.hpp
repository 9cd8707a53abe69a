#pragma once

// Exact arithmetic over GF(p^k).
//
// Elements are stored as the integer code sum_i c_i p^i of their coefficient
// vector (c_0 .. c_{k-1}) modulo the field's monic irreducible modulus. For a
// prime field the code is the residue itself.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gmmds {

struct FieldElem {
    std::uint64_t code = 0;

    friend bool operator==(FieldElem, FieldElem) = default;
    friend auto operator<=>(FieldElem, FieldElem) = default;
};

class GaloisField {
public:
    /// Prime field GF(p) or GF(p^k) with the given modulus (low-to-high,
    /// monic, length k+1). The modulus is checked for irreducibility.
    GaloisField(std::uint64_t p, std::vector<std::uint64_t> modulus);

    std::uint64_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return k_; }
    std::uint64_t size() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

    FieldElem zero() const noexcept { return {0}; }
    FieldElem one() const noexcept { return {1}; }
    /// Element with the given code; throws InvalidInput if code >= q.
    FieldElem element(std::uint64_t code) const;
    /// Image of an integer in the prime subfield.
    FieldElem from_int(std::int64_t value) const noexcept;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem pow(FieldElem a, std::uint64_t e) const;
    /// Multiplicative inverse; throws InvalidInput for zero.
    FieldElem inv(FieldElem a) const;
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    /// Coefficient vector c_0 .. c_{k-1}.
    std::vector<std::uint64_t> digits(FieldElem a) const;
    FieldElem from_digits(std::span<const std::uint64_t> digits) const;

    /// Integer for prime fields, "(c0,c1,...)" for extension fields.
    std::string format(FieldElem a) const;

    friend bool operator==(const GaloisField& a, const GaloisField& b) {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

private:
    std::uint64_t p_;
    int k_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
};

/// GF(q) with a deterministic modulus: the monic irreducible polynomial of
/// degree k whose non-leading coefficients have the smallest code.
/// Throws NotPrimePower when q is not p^k or q < 2.
GaloisField make_field(std::uint64_t q);

bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime power >= n (n >= 2).
std::uint64_t next_prime_power(std::uint64_t n);

/// Exhaustive irreducibility test of a monic polynomial over GF(p).
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic);

class FieldMatrix {
public:
    FieldMatrix(GaloisField field, int rows, int cols);
    FieldMatrix(GaloisField field, int rows, int cols, std::vector<FieldElem> entries);

    static FieldMatrix identity(GaloisField field, int size);
    /// Entries given as codes, row-major.
    static FieldMatrix from_codes(GaloisField field, const std::vector<std::vector<std::uint64_t>>& rows);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const GaloisField& field() const noexcept { return field_; }

    FieldElem& at(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    FieldElem at(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    const std::vector<FieldElem>& entries() const noexcept { return entries_; }

    FieldMatrix operator*(const FieldMatrix& rhs) const;
    /// Sub-matrix made of the listed columns (0-based).
    FieldMatrix columns(std::span<const int> cols) const;

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    GaloisField field_;
    int rows_;
    int cols_;
    std::vector<FieldElem> entries_;
};

/// Determinant by Gaussian elimination with first-nonzero pivoting.
FieldElem det(const FieldMatrix& mat);
bool invertible(const FieldMatrix& mat);

/// Determinant of a row-major square block; used on scratch buffers.
FieldElem det_inplace(const GaloisField& field, std::span<FieldElem> square, int size);

}  // namespace gmmds
