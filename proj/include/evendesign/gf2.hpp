#pragma once

// Linear algebra over GF(2) on bitmask-encoded vectors, and the small
// extension fields GF(2^s) used by the norm-one circle construction.
//
// Bit convention shared by every module: bit i of a mask is coordinate i.

#include <cstdint>
#include <span>
#include <vector>

namespace evendesign {

/// A dense GF(2) matrix with at most 64 columns; row r, column c is bit c of rows()[r].
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::vector<std::uint64_t> rows, int ncols);

    /// Builds the nrows x cols.size() matrix whose column j is cols[j].
    static Gf2Matrix from_columns(std::span<const std::uint32_t> cols, int nrows);
    static Gf2Matrix identity(int size);

    int nrows() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    std::uint64_t row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
    bool at(int r, int c) const { return (row(r) >> c) & 1U; }

    Gf2Matrix transpose() const;

    /// M * v, where v is a column vector packed into ncols() bits; result has nrows() bits.
    std::uint64_t apply(std::uint64_t v) const;

    bool operator==(const Gf2Matrix&) const = default;

private:
    std::vector<std::uint64_t> rows_;
    int ncols_ = 0;
};

int rank(const Gf2Matrix& m);

/// Basis of { v : M v = 0 }; exactly ncols - rank vectors.
std::vector<std::uint64_t> nullspace_basis(const Gf2Matrix& m);

/// Rank of a set of column vectors (points).
int rank_of_points(std::span<const std::uint32_t> points);

/// Reduced echelon basis of span(points), one vector per pivot.
std::vector<std::uint32_t> span_basis(std::span<const std::uint32_t> points);

/// Inverse of a square invertible matrix; throws DomainError if singular.
Gf2Matrix inverse(const Gf2Matrix& m);

inline int parity(std::uint64_t x)
{
    return __builtin_parityll(x);
}

inline int popcount(std::uint64_t x)
{
    return __builtin_popcountll(x);
}

// ---------------------------------------------------------------------------
// GF(2^s), 2 <= s <= 12, modulo a fixed primitive polynomial.

struct FieldElement {
    std::uint32_t value = 0;
    int degree = 0;

    bool operator==(const FieldElement&) const = default;
};

constexpr int kMinFieldDegree = 2;
constexpr int kMaxFieldDegree = 12;

/// Primitive polynomial for GF(2^s) including the x^s term; ConfigError if unsupported.
std::uint32_t primitive_polynomial(int degree);

FieldElement ff_element(std::uint32_t value, int degree);
/// The class of x, a generator of the multiplicative group.
FieldElement ff_generator(int degree);
FieldElement ff_add(FieldElement a, FieldElement b);
FieldElement ff_mul(FieldElement a, FieldElement b);
FieldElement ff_pow(FieldElement a, std::uint64_t exponent);
/// Multiplicative order; DomainError for zero.
std::uint64_t ff_element_order(FieldElement a);

} // namespace evendesign
