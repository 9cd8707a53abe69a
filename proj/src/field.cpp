#include "gmmds/field.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gmmds/error.hpp"

namespace gmmds {

namespace {

constexpr int kMaxDegree = 63;

using Digits = std::array<std::uint64_t, kMaxDegree + 1>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

// Remainder of num modulo a monic divisor, both low-to-high over GF(p).
std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> num, std::span<const std::uint64_t> monic,
                                    std::uint64_t p) {
    const std::size_t d = monic.size() - 1;
    while (num.size() > d) {
        const std::uint64_t lead = num.back();
        const std::size_t shift = num.size() - 1 - d;
        if (lead != 0) {
            for (std::size_t i = 0; i < d; ++i) {
                num[shift + i] = (num[shift + i] + p - mulmod(lead, monic[i], p)) % p;
            }
        }
        num.pop_back();
    }
    return num;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic) {
    const int k = static_cast<int>(monic.size()) - 1;
    if (k < 1 || monic.back() != 1) return false;
    if (k == 1) return true;
    // Any factorization has a monic factor of degree <= k/2.
    for (int d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        std::vector<std::uint64_t> divisor(static_cast<std::size_t>(d) + 1);
        for (std::uint64_t code = 0; code < count; ++code) {
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                divisor[static_cast<std::size_t>(i)] = c % p;
                c /= p;
            }
            divisor[static_cast<std::size_t>(d)] = 1;
            auto rem = poly_rem({monic.begin(), monic.end()}, divisor, p);
            if (std::all_of(rem.begin(), rem.end(), [](std::uint64_t x) { return x == 0; })) return false;
        }
    }
    return true;
}

GaloisField::GaloisField(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), k_(static_cast<int>(modulus.size()) - 1), q_(1), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw Error(ErrorKind::NotPrimePower, fmt::format("characteristic {} is not prime", p_));
    if (k_ < 1 || k_ > kMaxDegree) throw Error(ErrorKind::InvalidInput, "modulus degree out of range");
    if (p_ > (std::uint64_t{1} << 32)) throw Error(ErrorKind::InvalidInput, "characteristic too large");
    for (auto c : modulus_) {
        if (c >= p_) throw Error(ErrorKind::InvalidInput, "modulus coefficient not reduced");
    }
    if (!is_irreducible(p_, modulus_)) {
        throw Error(ErrorKind::InvalidInput, fmt::format("modulus {} is not irreducible", fmt::join(modulus_, ",")));
    }
    for (int i = 0; i < k_; ++i) {
        if (q_ > UINT64_MAX / p_) throw Error(ErrorKind::InvalidInput, "field too large");
        q_ *= p_;
    }
}

FieldElem GaloisField::element(std::uint64_t code) const {
    if (code >= q_) throw Error(ErrorKind::InvalidInput, fmt::format("code {} outside GF({})", code, q_));
    return {code};
}

FieldElem GaloisField::from_int(std::int64_t value) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return {static_cast<std::uint64_t>(r)};
}

std::vector<std::uint64_t> GaloisField::digits(FieldElem a) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(k_));
    for (auto& d : out) {
        d = a.code % p_;
        a.code /= p_;
    }
    return out;
}

FieldElem GaloisField::from_digits(std::span<const std::uint64_t> digits) const {
    std::uint64_t code = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) code = code * p_ + (*it % p_);
    return {code};
}

FieldElem GaloisField::add(FieldElem a, FieldElem b) const {
    if (k_ == 1) {
        std::uint64_t s = a.code + b.code;
        return {s >= p_ ? s - p_ : s};
    }
    std::uint64_t out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        out += ((a.code % p_ + b.code % p_) % p_) * scale;
        a.code /= p_;
        b.code /= p_;
        scale *= p_;
    }
    return {out};
}

FieldElem GaloisField::neg(FieldElem a) const {
    if (k_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
    std::uint64_t out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        out += ((p_ - a.code % p_) % p_) * scale;
        a.code /= p_;
        scale *= p_;
    }
    return {out};
}

FieldElem GaloisField::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem GaloisField::mul(FieldElem a, FieldElem b) const {
    if (k_ == 1) return {mulmod(a.code, b.code, p_)};
    Digits da{}, db{};
    for (int i = 0; i < k_; ++i) {
        da[static_cast<std::size_t>(i)] = a.code % p_;
        a.code /= p_;
        db[static_cast<std::size_t>(i)] = b.code % p_;
        b.code /= p_;
    }
    std::array<std::uint64_t, 2 * (kMaxDegree + 1)> prod{};
    for (int i = 0; i < k_; ++i) {
        if (da[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < k_; ++j) {
            auto& slot = prod[static_cast<std::size_t>(i + j)];
            slot = (slot + mulmod(da[static_cast<std::size_t>(i)], db[static_cast<std::size_t>(j)], p_)) % p_;
        }
    }
    for (int top = 2 * k_ - 2; top >= k_; --top) {
        const std::uint64_t lead = prod[static_cast<std::size_t>(top)];
        if (lead == 0) continue;
        const int shift = top - k_;
        for (int i = 0; i < k_; ++i) {
            auto& slot = prod[static_cast<std::size_t>(shift + i)];
            slot = (slot + p_ - mulmod(lead, modulus_[static_cast<std::size_t>(i)], p_)) % p_;
        }
        prod[static_cast<std::size_t>(top)] = 0;
    }
    std::uint64_t code = 0;
    for (int i = k_ - 1; i >= 0; --i) code = code * p_ + prod[static_cast<std::size_t>(i)];
    return {code};
}

FieldElem GaloisField::pow(FieldElem a, std::uint64_t e) const {
    FieldElem result = one();
    while (e > 0) {
        if (e & 1U) result = mul(result, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return result;
}

FieldElem GaloisField::inv(FieldElem a) const {
    if (a.code == 0) throw Error(ErrorKind::InvalidInput, "inverse of zero");
    return pow(a, q_ - 2);
}

std::string GaloisField::format(FieldElem a) const {
    if (k_ == 1) return std::to_string(a.code);
    return fmt::format("({})", fmt::join(digits(a), ","));
}

GaloisField make_field(std::uint64_t q) {
    if (q < 2) throw Error(ErrorKind::NotPrimePower, fmt::format("{} is not a prime power", q));
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d <= q / d; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return GaloisField(q, {0, 1});
    int k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw Error(ErrorKind::NotPrimePower, fmt::format("{} has two distinct prime factors", q));

    std::vector<std::uint64_t> modulus(static_cast<std::size_t>(k) + 1);
    modulus[static_cast<std::size_t>(k)] = 1;
    for (std::uint64_t code = 0; code < q; ++code) {
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            modulus[static_cast<std::size_t>(i)] = c % p;
            c /= p;
        }
        if (is_irreducible(p, modulus)) return GaloisField(p, modulus);
    }
    throw Error(ErrorKind::InvalidInput, fmt::format("no irreducible polynomial of degree {} over GF({})", k, p));
}

std::uint64_t next_prime_power(std::uint64_t n) {
    for (std::uint64_t q = std::max<std::uint64_t>(n, 2);; ++q) {
        std::uint64_t p = 0;
        for (std::uint64_t d = 2; d <= q / d; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        if (p == 0) return q;
        std::uint64_t rest = q;
        while (rest % p == 0) rest /= p;
        if (rest == 1) return q;
    }
}

FieldMatrix::FieldMatrix(GaloisField field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw Error(ErrorKind::InvalidInput, "negative matrix dimension");
}

FieldMatrix::FieldMatrix(GaloisField field, int rows, int cols, std::vector<FieldElem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw Error(ErrorKind::SizeMismatch, "entry count differs from rows*cols");
    }
    for (auto e : entries_) field_.element(e.code);
}

FieldMatrix FieldMatrix::identity(GaloisField field, int size) {
    FieldMatrix out(std::move(field), size, size);
    for (int i = 0; i < size; ++i) out.at(i, i) = out.field_.one();
    return out;
}

FieldMatrix FieldMatrix::from_codes(GaloisField field, const std::vector<std::vector<std::uint64_t>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    std::vector<FieldElem> entries;
    entries.reserve(static_cast<std::size_t>(r * c));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw Error(ErrorKind::SizeMismatch, "ragged rows");
        for (auto code : row) entries.push_back(field.element(code));
    }
    return FieldMatrix(std::move(field), r, c, std::move(entries));
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
    if (cols_ != rhs.rows_ || !(field_ == rhs.field_)) throw Error(ErrorKind::SizeMismatch, "matrix product");
    FieldMatrix out(field_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < rhs.cols_; ++j) {
            FieldElem acc = field_.zero();
            for (int t = 0; t < cols_; ++t) acc = field_.add(acc, field_.mul(at(i, t), rhs.at(t, j)));
            out.at(i, j) = acc;
        }
    }
    return out;
}

FieldMatrix FieldMatrix::columns(std::span<const int> cols) const {
    FieldMatrix out(field_, rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] < 0 || cols[j] >= cols_) throw Error(ErrorKind::SizeMismatch, "column index out of range");
            out.at(i, static_cast<int>(j)) = at(i, cols[j]);
        }
    }
    return out;
}

FieldElem det_inplace(const GaloisField& field, std::span<FieldElem> a, int n) {
    auto idx = [n](int r, int c) { return static_cast<std::size_t>(r * n + c); };
    FieldElem result = field.one();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        while (pivot < n && a[idx(pivot, col)].code == 0) ++pivot;
        if (pivot == n) return field.zero();
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a[idx(pivot, c)], a[idx(col, c)]);
            result = field.neg(result);
        }
        const FieldElem pv = a[idx(col, col)];
        result = field.mul(result, pv);
        const FieldElem pinv = field.inv(pv);
        for (int r = col + 1; r < n; ++r) {
            if (a[idx(r, col)].code == 0) continue;
            const FieldElem factor = field.mul(a[idx(r, col)], pinv);
            for (int c = col; c < n; ++c) {
                a[idx(r, c)] = field.sub(a[idx(r, c)], field.mul(factor, a[idx(col, c)]));
            }
        }
    }
    return result;
}

FieldElem det(const FieldMatrix& mat) {
    if (mat.rows() != mat.cols()) {
        throw Error(ErrorKind::NonSquare, fmt::format("{}x{} matrix", mat.rows(), mat.cols()));
    }
    auto scratch = mat.entries();
    return det_inplace(mat.field(), scratch, mat.rows());
}

bool invertible(const FieldMatrix& mat) { return det(mat).code != 0; }

}  // namespace gmmds
