#include "evendesign/design.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "evendesign/errors.hpp"
#include "evendesign/transforms.hpp"

namespace evendesign {

namespace {

// Packed rows of n bits, `words` 64-bit words per row.
struct PackedRows {
    int words = 0;
    std::vector<std::uint64_t> bits;

    std::uint64_t* row(std::size_t r) { return bits.data() + r * static_cast<std::size_t>(words); }
    const std::uint64_t* row(std::size_t r) const { return bits.data() + r * static_cast<std::size_t>(words); }
    std::size_t size() const { return words ? bits.size() / static_cast<std::size_t>(words) : 0; }
};

// Row c of the factor representation: bit j set iff point j has coordinate c.
PackedRows coordinate_rows(const DesignSpec& d)
{
    PackedRows rows;
    rows.words = std::max(1, (d.n() + 63) / 64);
    rows.bits.assign(static_cast<std::size_t>(d.k()) * static_cast<std::size_t>(rows.words), 0);
    for (int j = 0; j < d.n(); ++j) {
        const PointMask p = d.points()[static_cast<std::size_t>(j)];
        for (int c = 0; c < d.k(); ++c)
            if ((p >> c) & 1U)
                rows.row(static_cast<std::size_t>(c))[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return rows;
}

// Gaussian elimination on packed rows; keeps only independent rows.
PackedRows echelon_basis(PackedRows rows, int ncols)
{
    const int w = rows.words;
    std::size_t next = 0;
    const std::size_t total = rows.size();
    for (int c = 0; c < ncols && next < total; ++c) {
        const int word = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t piv = next;
        while (piv < total && !(rows.row(piv)[word] & bit))
            ++piv;
        if (piv == total)
            continue;
        if (piv != next)
            std::swap_ranges(rows.row(piv), rows.row(piv) + w, rows.row(next));
        for (std::size_t r = 0; r < total; ++r)
            if (r != next && (rows.row(r)[word] & bit))
                for (int t = 0; t < w; ++t)
                    rows.row(r)[t] ^= rows.row(next)[t];
        ++next;
    }
    rows.bits.resize(next * static_cast<std::size_t>(w));
    return rows;
}

// Solves f.p = 1 for every point p; empty when no such functional exists.
std::optional<PointMask> all_ones_functional(const DesignSpec& d)
{
    const int k = d.k();
    std::vector<std::uint64_t> rows;
    rows.reserve(d.points().size());
    for (PointMask p : d.points())
        rows.push_back(static_cast<std::uint64_t>(p) | (std::uint64_t{1} << k));
    // Reduced echelon form over columns 0..k (column k is the right-hand side).
    std::vector<int> pivots;
    std::size_t next = 0;
    for (int c = 0; c <= k && next < rows.size(); ++c) {
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
    PointMask f = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == k)
            return std::nullopt; // 0 = 1
        if ((rows[i] >> k) & 1U)
            f |= PointMask{1} << pivots[i];
    }
    if (d.n() == 0)
        f = PointMask{1} << (k - 1);
    return f;
}

} // namespace

// ---------------------------------------------------------------------------

DesignSpec::DesignSpec(int k, std::vector<PointMask> points, std::string name)
    : k_(k), points_(std::move(points)), name_(std::move(name))
{
    if (k < 1 || k > kMaxRunExponent)
        throw DomainError("run-size exponent k must be in 1..30, got " + std::to_string(k));
    const PointMask limit = PointMask{1} << k;
    for (PointMask p : points_) {
        if (p == 0)
            throw DomainError("points of PG(k-1,2) are nonzero");
        if (p >= limit)
            throw DomainError("point " + std::to_string(p) + " does not fit in k=" + std::to_string(k) + " bits");
    }
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw DomainError("design points must be distinct");
}

int DesignSpec::rank() const
{
    return rank_of_points(points_);
}

bool DesignSpec::contains(PointMask p) const
{
    return std::binary_search(points_.begin(), points_.end(), p);
}

bool DesignSpec::in_top_half() const
{
    const PointMask top = PointMask{1} << (k_ - 1);
    return std::all_of(points_.begin(), points_.end(), [top](PointMask p) { return (p & top) != 0; });
}

BigInt WordlengthPattern::at(int i) const
{
    if (i < 1 || i >= static_cast<int>(counts.size()))
        return 0;
    return counts[static_cast<std::size_t>(i)];
}

BigInt WordlengthPattern::total() const
{
    BigInt sum = 0;
    for (std::size_t i = 1; i < counts.size(); ++i)
        sum += counts[i];
    return sum;
}

std::optional<int> WordlengthPattern::resolution() const
{
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i] != 0)
            return static_cast<int>(i);
    return std::nullopt;
}

bool WordlengthPattern::odd_free() const
{
    for (std::size_t i = 1; i < counts.size(); i += 2)
        if (counts[i] != 0)
            return false;
    return true;
}

int compare_aberration(const WordlengthPattern& a, const WordlengthPattern& b)
{
    const int n = std::max(a.n(), b.n());
    for (int i = 1; i <= n; ++i) {
        const BigInt x = a.at(i);
        const BigInt y = b.at(i);
        if (x != y)
            return x < y ? -1 : 1;
    }
    return 0;
}

std::uint64_t WeightDistribution::total() const
{
    std::uint64_t s = 0;
    for (auto c : counts)
        s += c;
    return s;
}

int WeightDistribution::dimension() const
{
    const std::uint64_t t = total();
    if (t == 0 || !std::has_single_bit(t))
        throw DomainError("weight distribution total " + std::to_string(t) + " is not a power of two");
    return std::countr_zero(t);
}

BlockedPartition BlockedPartition::residual_design() const
{
    BlockedPartition out = *this;
    std::swap(out.treatment, out.residual);
    return out;
}

BlockedPartition make_blocked_partition(int k, std::vector<PointMask> treatment, std::vector<PointMask> block_generators)
{
    const DesignSpec checked(k, treatment); // validates the treatment points
    const int r = static_cast<int>(block_generators.size());
    if (r >= k)
        throw DomainError("number of blocking generators must be below k");
    if (rank_of_points(block_generators) != r)
        throw DomainError("blocking generators must be independent");
    const PointMask limit = PointMask{1} << k;
    std::vector<bool> used(limit, false);
    for (PointMask g : block_generators)
        if (g == 0 || g >= limit)
            throw DomainError("blocking generator out of range");
    for (std::uint32_t s = 1; s < (1U << r); ++s) {
        PointMask e = 0;
        for (int b = 0; b < r; ++b)
            if ((s >> b) & 1U)
                e ^= block_generators[static_cast<std::size_t>(b)];
        used[e] = true;
    }
    for (PointMask p : checked.points()) {
        if (used[p])
            throw DomainError("treatment point " + std::to_string(p) + " is confounded with blocks");
        used[p] = true;
    }
    BlockedPartition out;
    out.k = k;
    out.r = r;
    out.treatment = checked.points();
    out.block_generators = std::move(block_generators);
    for (PointMask p = 1; p < limit; ++p)
        if (!used[p])
            out.residual.push_back(p);
    return out;
}

BigInt SplitWordlengthPattern::at0(int i) const
{
    return (i >= 0 && i < static_cast<int>(a0.size())) ? a0[static_cast<std::size_t>(i)] : BigInt(0);
}

BigInt SplitWordlengthPattern::at1(int i) const
{
    return (i >= 0 && i < static_cast<int>(a1.size())) ? a1[static_cast<std::size_t>(i)] : BigInt(0);
}

// ---------------------------------------------------------------------------

WeightDistribution weight_distribution(const DesignSpec& d, int max_rank)
{
    const int dim = d.rank();
    if (dim > max_rank)
        throw ResourceError("rank " + std::to_string(dim) + " exceeds the enumeration budget of " +
                            std::to_string(max_rank));
    const PackedRows basis = echelon_basis(coordinate_rows(d), d.n());
    const int w = basis.words;

    WeightDistribution out;
    out.counts.assign(static_cast<std::size_t>(d.n()) + 1, 0);
    std::vector<std::uint64_t> word(static_cast<std::size_t>(w), 0);
    out.counts[0] = 1;
    const std::uint64_t total = std::uint64_t{1} << dim;
    for (std::uint64_t i = 1; i < total; ++i) {
        const std::uint64_t* flip = basis.row(static_cast<std::size_t>(std::countr_zero(i)));
        int weight = 0;
        for (int t = 0; t < w; ++t) {
            word[static_cast<std::size_t>(t)] ^= flip[t];
            weight += popcount(word[static_cast<std::size_t>(t)]);
        }
        ++out.counts[static_cast<std::size_t>(weight)];
    }
    return out;
}

WordlengthPattern wordlength_pattern(const DesignSpec& d, int max_rank)
{
    const WeightDistribution wd = weight_distribution(d, max_rank);
    return macwilliams(wd, d.n(), wd.dimension());
}

std::optional<int> resolution(const DesignSpec& d)
{
    return wordlength_pattern(d).resolution();
}

bool is_even(const DesignSpec& d)
{
    return all_ones_functional(d).has_value();
}

std::optional<Gf2Matrix> even_basis_change(const DesignSpec& d)
{
    const auto f = all_ones_functional(d);
    if (!f)
        return std::nullopt;
    const int k = d.k();
    std::vector<std::uint32_t> chosen{*f};
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < k && static_cast<int>(chosen.size()) < k; ++i) {
        chosen.push_back(PointMask{1} << i);
        if (rank_of_points(chosen) == static_cast<int>(chosen.size()))
            rows.push_back(std::uint64_t{1} << i);
        else
            chosen.pop_back();
    }
    rows.push_back(*f); // top coordinate
    return Gf2Matrix(std::move(rows), k);
}

DesignSpec apply_basis_change(const DesignSpec& d, const Gf2Matrix& change)
{
    if (change.nrows() != d.k() || change.ncols() != d.k())
        throw DomainError("basis change must be k x k");
    std::vector<PointMask> out;
    out.reserve(d.points().size());
    for (PointMask p : d.points())
        out.push_back(static_cast<PointMask>(change.apply(p)));
    return DesignSpec(d.k(), std::move(out), d.name());
}

DesignSpec canonicalize_even(const DesignSpec& d)
{
    if (d.in_top_half())
        return d;
    const auto change = even_basis_change(d);
    if (!change)
        throw DomainError("design is not even");
    return apply_basis_change(d, *change);
}

DesignSpec maximal_even(int k)
{
    if (k < 2)
        throw DomainError("maximal even design requires k >= 2");
    std::vector<PointMask> pts;
    for (PointMask p = PointMask{1} << (k - 1); p < (PointMask{1} << k); ++p)
        pts.push_back(p);
    return DesignSpec(k, std::move(pts), "maximal-even-k" + std::to_string(k));
}

EvenPartition complement_in_maximal_even(const DesignSpec& d)
{
    if (!is_even(d))
        throw DomainError("complement in the maximal even design requires an even design");
    const DesignSpec canonical = canonicalize_even(d);
    const int k = d.k();
    const PointMask half = PointMask{1} << (k - 1);
    EvenPartition part;
    part.k = k;
    part.T = canonical.points();
    for (PointMask p = 1; p < half; ++p)
        part.F.push_back(p);
    for (PointMask p = half; p < 2 * half; ++p)
        if (!canonical.contains(p))
            part.T_tilde.push_back(p);
    return part;
}

WordlengthPattern defining_words_bruteforce(const DesignSpec& d, int max_dual_dim)
{
    const int dual = d.n() - d.rank();
    if (dual > max_dual_dim)
        throw ResourceError("dual dimension " + std::to_string(dual) + " exceeds the oracle budget of " +
                            std::to_string(max_dual_dim));
    const Gf2Matrix m = Gf2Matrix::from_columns(d.points(), d.k());
    const auto basis = nullspace_basis(m);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(d.n()) + 1, 0);
    std::uint64_t word = 0;
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        ++counts[static_cast<std::size_t>(popcount(word))];
    }
    WordlengthPattern out(d.n());
    for (std::size_t i = 1; i < counts.size(); ++i)
        out.counts[i] = counts[i];
    return out;
}

SplitWordlengthPattern split_wordlength_bruteforce(const BlockedPartition& partition, int max_dual_dim)
{
    const int nt = static_cast<int>(partition.treatment.size());
    const int r = static_cast<int>(partition.block_generators.size());
    std::vector<PointMask> cols = partition.treatment;
    cols.insert(cols.end(), partition.block_generators.begin(), partition.block_generators.end());
    const int dual = nt + r - rank_of_points(cols);
    if (dual > max_dual_dim)
        throw ResourceError("split oracle dual dimension " + std::to_string(dual) + " exceeds budget " +
                            std::to_string(max_dual_dim));
    const auto basis = nullspace_basis(Gf2Matrix::from_columns(cols, partition.k));
    const std::uint64_t treat_mask = nt >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nt) - 1;
    std::vector<std::uint64_t> a0(static_cast<std::size_t>(nt) + 1, 0), a1(static_cast<std::size_t>(nt) + 1, 0);
    std::uint64_t word = 0;
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        const auto letters = static_cast<std::size_t>(popcount(word & treat_mask));
        if (word & ~treat_mask)
            ++a1[letters];
        else
            ++a0[letters];
    }
    SplitWordlengthPattern out;
    out.r = r;
    out.a0.assign(a0.begin(), a0.end());
    out.a1.assign(a1.begin(), a1.end());
    return out;
}

SplitWordlengthPattern split_wordlength_bruteforce(const EvenPartition& partition, PartitionSide side, int max_dual_dim)
{
    BlockedPartition blocked;
    blocked.k = partition.k;
    blocked.r = partition.k - 1;
    blocked.block_generators = hyperplane_generators(partition.k);
    blocked.treatment = side == PartitionSide::design ? partition.T : partition.T_tilde;
    blocked.residual = side == PartitionSide::design ? partition.T_tilde : partition.T;
    return split_wordlength_bruteforce(blocked, max_dual_dim);
}

std::vector<PointMask> hyperplane_generators(int k)
{
    std::vector<PointMask> out;
    for (int i = 0; i + 1 < k; ++i)
        out.push_back(PointMask{1} << i);
    return out;
}

} // namespace evendesign
