#include "evendesign/gf2.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "evendesign/errors.hpp"

namespace evendesign {

namespace {

std::uint64_t column_mask(int ncols)
{
    return ncols >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << ncols) - 1);
}

// Row-reduces in place to reduced echelon form; returns pivot column per pivot row.
std::vector<int> reduce(std::vector<std::uint64_t>& rows, int ncols)
{
    std::vector<int> pivots;
    std::size_t next = 0;
    for (int c = 0; c < ncols && next < rows.size(); ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(next), rows.end(),
                               [bit](std::uint64_t r) { return (r & bit) != 0; });
        if (it == rows.end())
            continue;
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(next), it);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next && (rows[r] & bit))
                rows[r] ^= rows[next];
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    return pivots;
}

} // namespace

Gf2Matrix::Gf2Matrix(std::vector<std::uint64_t> rows, int ncols) : rows_(std::move(rows)), ncols_(ncols)
{
    if (ncols < 0 || ncols > 64)
        throw DomainError("Gf2Matrix supports 0..64 columns, got " + std::to_string(ncols));
    const std::uint64_t mask = column_mask(ncols);
    for (std::uint64_t r : rows_)
        if (r & ~mask)
            throw DomainError("Gf2Matrix row does not fit in " + std::to_string(ncols) + " columns");
}

Gf2Matrix Gf2Matrix::from_columns(std::span<const std::uint32_t> cols, int nrows)
{
    if (nrows < 0 || nrows > 32)
        throw DomainError("from_columns supports up to 32 rows");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(nrows), 0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (nrows < 32 && (cols[j] >> nrows) != 0)
            throw DomainError("column " + std::to_string(cols[j]) + " does not fit in " + std::to_string(nrows) + " rows");
        for (int i = 0; i < nrows; ++i)
            if ((cols[j] >> i) & 1U)
                rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
    return Gf2Matrix(std::move(rows), static_cast<int>(cols.size()));
}

Gf2Matrix Gf2Matrix::identity(int size)
{
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < size; ++i)
        rows.push_back(std::uint64_t{1} << i);
    return Gf2Matrix(std::move(rows), size);
}

Gf2Matrix Gf2Matrix::transpose() const
{
    std::vector<std::uint64_t> out(static_cast<std::size_t>(ncols_), 0);
    for (int r = 0; r < nrows(); ++r)
        for (int c = 0; c < ncols_; ++c)
            if (at(r, c))
                out[static_cast<std::size_t>(c)] |= std::uint64_t{1} << r;
    return Gf2Matrix(std::move(out), nrows());
}

std::uint64_t Gf2Matrix::apply(std::uint64_t v) const
{
    std::uint64_t out = 0;
    for (int r = 0; r < nrows(); ++r)
        out |= static_cast<std::uint64_t>(parity(rows_[static_cast<std::size_t>(r)] & v)) << r;
    return out;
}

int rank(const Gf2Matrix& m)
{
    auto rows = m.rows();
    return static_cast<int>(reduce(rows, m.ncols()).size());
}

std::vector<std::uint64_t> nullspace_basis(const Gf2Matrix& m)
{
    auto rows = m.rows();
    const auto pivots = reduce(rows, m.ncols());
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.ncols()), false);
    for (int p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<std::uint64_t> basis;
    for (int f = 0; f < m.ncols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)])
            continue;
        std::uint64_t v = std::uint64_t{1} << f;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if ((rows[i] >> f) & 1U)
                v |= std::uint64_t{1} << pivots[i];
        basis.push_back(v);
    }
    return basis;
}

std::vector<std::uint32_t> span_basis(std::span<const std::uint32_t> points)
{
    std::vector<std::uint64_t> rows(points.begin(), points.end());
    reduce(rows, 32);
    return {rows.begin(), rows.end()};
}

int rank_of_points(std::span<const std::uint32_t> points)
{
    // Column rank equals row rank; eliminate on the points directly.
    std::array<std::uint32_t, 32> basis{}; // basis[b] has highest set bit b
    int r = 0;
    for (std::uint32_t p : points) {
        std::uint32_t x = p;
        while (x) {
            const int top = 31 - __builtin_clz(x);
            if (!basis[static_cast<std::size_t>(top)]) {
                basis[static_cast<std::size_t>(top)] = x;
                ++r;
                break;
            }
            x ^= basis[static_cast<std::size_t>(top)];
        }
    }
    return r;
}

Gf2Matrix inverse(const Gf2Matrix& m)
{
    const int n = m.nrows();
    if (n != m.ncols() || n > 32)
        throw DomainError("inverse requires a square matrix of size <= 32");
    // Augment [M | I] in one 64-bit row.
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back(m.row(i) | (std::uint64_t{1} << (n + i)));
    for (int c = 0; c < n; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (rows[static_cast<std::size_t>(r)] & bit) {
                piv = r;
                break;
            }
        if (piv < 0)
            throw DomainError("matrix is singular");
        std::swap(rows[static_cast<std::size_t>(c)], rows[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < n; ++r)
            if (r != c && (rows[static_cast<std::size_t>(r)] & bit))
                rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(c)];
    }
    std::vector<std::uint64_t> out;
    for (auto r : rows)
        out.push_back(r >> n);
    return Gf2Matrix(std::move(out), n);
}

// ---------------------------------------------------------------------------

std::uint32_t primitive_polynomial(int degree)
{
    // Low-weight primitive polynomials, x^s term included.
    static constexpr std::array<std::uint32_t, 13> table = {
        0, 0,
        0x7,    // x^2 + x + 1
        0xB,    // x^3 + x + 1
        0x13,   // x^4 + x + 1
        0x25,   // x^5 + x^2 + 1
        0x43,   // x^6 + x + 1
        0x83,   // x^7 + x + 1
        0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
        0x211,  // x^9 + x^4 + 1
        0x409,  // x^10 + x^3 + 1
        0x805,  // x^11 + x^2 + 1
        0x1053, // x^12 + x^6 + x^4 + x + 1
    };
    if (degree < kMinFieldDegree || degree > kMaxFieldDegree)
        throw ConfigError("no primitive polynomial for GF(2^" + std::to_string(degree) + ")");
    return table[static_cast<std::size_t>(degree)];
}

FieldElement ff_element(std::uint32_t value, int degree)
{
    primitive_polynomial(degree); // validates degree
    if (value >> degree)
        throw DomainError("field element " + std::to_string(value) + " exceeds GF(2^" + std::to_string(degree) + ")");
    return {value, degree};
}

FieldElement ff_generator(int degree)
{
    return ff_element(2, degree);
}

FieldElement ff_add(FieldElement a, FieldElement b)
{
    if (a.degree != b.degree)
        throw DomainError("field elements of different degree");
    return {a.value ^ b.value, a.degree};
}

FieldElement ff_mul(FieldElement a, FieldElement b)
{
    if (a.degree != b.degree)
        throw DomainError("field elements of different degree");
    const std::uint32_t poly = primitive_polynomial(a.degree);
    const std::uint32_t top = std::uint32_t{1} << a.degree;
    std::uint32_t x = a.value;
    std::uint32_t y = b.value;
    std::uint32_t acc = 0;
    while (y) {
        if (y & 1U)
            acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x & top)
            x ^= poly;
    }
    return {acc, a.degree};
}

FieldElement ff_pow(FieldElement a, std::uint64_t exponent)
{
    FieldElement result{1, a.degree};
    FieldElement base = a;
    while (exponent) {
        if (exponent & 1U)
            result = ff_mul(result, base);
        base = ff_mul(base, base);
        exponent >>= 1;
    }
    return result;
}

std::uint64_t ff_element_order(FieldElement a)
{
    if (a.value == 0)
        throw DomainError("zero has no multiplicative order");
    const std::uint64_t group = (std::uint64_t{1} << a.degree) - 1;
    // Smallest divisor t of the group order with a^t = 1.
    std::uint64_t best = group;
    for (std::uint64_t t = 1; t * t <= group; ++t) {
        if (group % t)
            continue;
        if (ff_pow(a, t).value == 1)
            return t;
        const std::uint64_t other = group / t;
        if (other < best && ff_pow(a, other).value == 1)
            best = other;
    }
    return best;
}

} // namespace evendesign
