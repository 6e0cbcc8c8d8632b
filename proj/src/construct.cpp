#include "evendesign/construct.hpp"

#include <algorithm>
#include <bit>

#include "evendesign/errors.hpp"
#include "evendesign/gf2.hpp"

namespace evendesign {

namespace {

void check_k(int k, int lo, int hi)
{
    if (k < lo || k > hi)
        throw DomainError("k must be in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " +
                          std::to_string(k));
}

PointMask top(int k)
{
    return PointMask{1} << (k - 1);
}

// Sum of b_first..b_last (1-based, inclusive).
PointMask sum_b(const std::vector<PointMask>& b, int first, int last)
{
    PointMask s = 0;
    for (int i = first; i <= last; ++i)
        s ^= b[static_cast<std::size_t>(i - 1)];
    return s;
}

// Letters lo..hi (1-based, inclusive) as a mask.
std::uint64_t letters(int lo, int hi)
{
    std::uint64_t m = 0;
    for (int j = lo; j <= hi; ++j)
        m |= std::uint64_t{1} << (j - 1);
    return m;
}

std::uint64_t letter(int j)
{
    return std::uint64_t{1} << (j - 1);
}

// Depth-first extension of a Sidon set in GF(2)^dim to `target` elements.
// The set starts from {0, e_0, ..., e_{min(dim, target-1)-1}}; any Sidon set of
// full affine rank is affinely equivalent to one containing this frame.
bool sidon_dfs(int dim, int target, std::vector<PointMask>& chosen, std::vector<std::uint8_t>& sums,
               PointMask next, std::uint64_t& budget)
{
    if (static_cast<int>(chosen.size()) == target)
        return true;
    const PointMask universe = PointMask{1} << dim;
    for (PointMask x = next; x < universe; ++x) {
        if (budget == 0)
            return false;
        --budget;
        bool ok = true;
        for (PointMask c : chosen)
            if (sums[x ^ c]) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        for (PointMask c : chosen)
            sums[x ^ c] = 1;
        chosen.push_back(x);
        if (sidon_dfs(dim, target, chosen, sums, x + 1, budget))
            return true;
        chosen.pop_back();
        for (PointMask c : chosen)
            sums[x ^ c] = 0;
    }
    return false;
}

} // namespace

std::string to_string(Family f)
{
    switch (f) {
    case Family::independent:
        return "independent";
    case Family::k_plus_1:
        return "k+1";
    case Family::k_plus_2:
        return "k+2";
    case Family::k_plus_3:
        return "k+3";
    case Family::sidon:
        return "sidon";
    }
    return "unknown";
}

Family parse_family(const std::string& name)
{
    for (Family f : {Family::independent, Family::k_plus_1, Family::k_plus_2, Family::k_plus_3, Family::sidon})
        if (to_string(f) == name)
            return f;
    throw ConfigError("unknown construction family '" + name + "'");
}

std::vector<PointMask> independent_points(int k, int count)
{
    check_k(k, 2, kMaxRunExponent);
    if (count < 0 || count > k)
        throw DomainError("at most k independent points exist");
    std::vector<PointMask> b;
    for (int i = 0; i < count; ++i)
        b.push_back(i == 0 ? top(k) : top(k) | (PointMask{1} << (i - 1)));
    return b;
}

ComplementFamily classify_complement(int k, int n_tilde)
{
    check_k(k, 4, kMaxRunExponent);
    ComplementFamily f;
    f.k = k;
    f.n_tilde = n_tilde;
    if (n_tilde < 0 || n_tilde > k + 3)
        throw DomainError("complement constructions cover 0 <= n_tilde <= k+3");
    if (n_tilde <= k) {
        f.family = Family::independent;
    } else if (n_tilde == k + 1) {
        f.family = Family::k_plus_1;
    } else if (n_tilde == k + 2) {
        f.family = Family::k_plus_2;
        f.m = k / 3;
        f.r = k % 3;
    } else {
        f.family = Family::k_plus_3;
        f.m = n_tilde / 7;
        f.r = n_tilde % 7;
    }
    return f;
}

DesignSpec complement_construction(int k, int n_tilde)
{
    const ComplementFamily f = classify_complement(k, n_tilde);
    switch (f.family) {
    case Family::independent:
        return DesignSpec(k, independent_points(k, n_tilde), "independent-k" + std::to_string(k));
    case Family::k_plus_1:
        return k_plus_1_complement(k);
    case Family::k_plus_2:
        return k_plus_2_complement(k);
    case Family::k_plus_3:
        return k_plus_3_complement(k);
    case Family::sidon:
        break;
    }
    throw InvariantViolation("unreachable family");
}

DesignSpec k_plus_1_complement(int k)
{
    check_k(k, 2, kMaxRunExponent);
    auto b = independent_points(k, k);
    const int size = (k % 2 == 1) ? k : k - 1;
    b.push_back(sum_b(b, 1, size));
    return DesignSpec(k, std::move(b), "k+1-k" + std::to_string(k));
}

DesignSpec k_plus_2_complement(int k)
{
    check_k(k, 4, kMaxRunExponent);
    auto b = independent_points(k, k);
    const int m = k / 3;
    const int r = k % 3;
    PointMask c = 0;
    PointMask d = 0;
    if (r == 0) {
        c = sum_b(b, 1, 2 * m - 1);
        d = sum_b(b, m + 1, 3 * m) ^ c;
    } else if (r == 1) {
        c = sum_b(b, 1, 2 * m + 1);
        d = sum_b(b, m + 1, 3 * m + 1);
    } else {
        c = sum_b(b, 1, 2 * m + 1);
        d = sum_b(b, m + 1, 3 * m + 2) ^ c;
    }
    b.push_back(c);
    b.push_back(d);
    return DesignSpec(k, std::move(b), "k+2-k" + std::to_string(k));
}

std::vector<std::uint64_t> k_plus_3_words(int n_tilde)
{
    if (n_tilde < 7 || n_tilde > 64)
        throw DomainError("the k+3 family needs 7 <= n_tilde <= 64");
    const int m = n_tilde / 7;
    const int r = n_tilde % 7;
    std::uint64_t B[8] = {};
    for (int i = 1; i <= 7; ++i)
        B[i] = letters(i * m - m + 1, i * m);
    const int base = 7 * m;
    switch (r) {
    case 0:
    case 1:
        break;
    case 2:
        B[1] |= letter(base + 1) | letter(base + 2);
        break;
    case 3:
        B[1] |= letter(base + 1);
        B[2] |= letter(base + 2);
        B[5] |= letter(base + 3);
        break;
    case 4:
        for (int i = 1; i <= 4; ++i)
            B[i] |= letter(base + i);
        break;
    case 5:
        // Blocks with an odd number of extra letters must form a line of the
        // Fano plane {B1,...,B7} for all three words to have even length.
        B[1] |= letter(base + 1);
        B[2] |= letter(base + 2);
        B[5] |= letter(base + 3);
        B[4] |= letter(base + 4) | letter(base + 5);
        break;
    case 6:
        for (int i = 1; i <= 4; ++i)
            B[i] |= letter(base + i);
        B[5] |= letter(base + 5) | letter(base + 6);
        break;
    default:
        break;
    }
    return {B[7] | B[6] | B[4] | B[3], B[7] | B[5] | B[4] | B[2], B[6] | B[5] | B[4] | B[1]};
}

DesignSpec design_from_words(int n, const std::vector<std::uint64_t>& words)
{
    if (n < 1 || n > 32)
        throw DomainError("design_from_words supports 1..32 letters");
    for (auto w : words)
        if (popcount(w) % 2 != 0)
            throw DomainError("every generating word must have even length");
    const Gf2Matrix dual(words, n);
    const auto code = nullspace_basis(dual); // vectors over n letters
    const int k = static_cast<int>(code.size());
    if (k < 1 || k > kMaxRunExponent)
        throw DomainError("generated code has unsupported dimension");
    const std::uint64_t ones = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    // Basis of the code with the all-ones vector as the last row.
    std::vector<std::uint32_t> basis_idx;
    std::vector<std::uint64_t> rows;
    {
        std::vector<std::uint64_t> reduced; // echelon copy for independence tests
        const auto independent_add = [&](std::uint64_t v) {
            std::uint64_t x = v;
            for (auto r : reduced)
                x = std::min(x, x ^ r);
            if (x == 0)
                return false;
            reduced.push_back(x);
            std::sort(reduced.rbegin(), reduced.rend());
            return true;
        };
        independent_add(ones);
        for (auto v : code)
            if (static_cast<int>(rows.size()) < k - 1 && independent_add(v))
                rows.push_back(v);
        rows.push_back(ones);
    }
    if (static_cast<int>(rows.size()) != k)
        throw InvariantViolation("failed to re-base the generated code");
    std::vector<PointMask> pts(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < k; ++c)
        for (int j = 0; j < n; ++j)
            if ((rows[static_cast<std::size_t>(c)] >> j) & 1U)
                pts[static_cast<std::size_t>(j)] |= PointMask{1} << c;
    return DesignSpec(k, std::move(pts));
}

DesignSpec k_plus_3_complement(int k)
{
    check_k(k, 4, 29);
    const int n_tilde = k + 3;
    DesignSpec d = design_from_words(n_tilde, k_plus_3_words(n_tilde));
    if (d.k() != k)
        throw InvariantViolation("k+3 words produced the wrong run size");
    d.set_name("k+3-k" + std::to_string(k));
    return d;
}

int sidon_capacity(int k)
{
    check_k(k, 3, 13);
    if (k % 2 == 1)
        return (1 << ((k - 1) / 2)) + 1;
    switch (k) {
    case 4:
        return 4;
    case 6:
        return 7;
    case 8:
        return 12;
    default:
        break;
    }
    throw DomainError("no Sidon construction is available for even k=" + std::to_string(k));
}

std::vector<PointMask> norm_one_circle(int s)
{
    const int degree = 2 * s;
    const FieldElement alpha = ff_generator(degree);
    const FieldElement beta = ff_pow(alpha, (std::uint64_t{1} << s) - 1);
    const std::uint64_t order = (std::uint64_t{1} << s) + 1;
    if (ff_element_order(beta) != order)
        throw InvariantViolation("beta does not have order 2^s + 1");
    std::vector<PointMask> out;
    FieldElement x = ff_element(1, degree);
    for (std::uint64_t i = 0; i < order; ++i) {
        out.push_back(x.value);
        x = ff_mul(x, beta);
    }
    return out;
}

DesignSpec sidon_complement(int k, int n_tilde)
{
    const int cap = sidon_capacity(k);
    if (n_tilde < 0 || n_tilde > cap)
        throw DomainError("n_tilde=" + std::to_string(n_tilde) + " exceeds the Sidon capacity " + std::to_string(cap) +
                          " for k=" + std::to_string(k));
    std::vector<PointMask> lower;
    if (k % 2 == 1) {
        lower = norm_one_circle((k - 1) / 2);
        lower.resize(static_cast<std::size_t>(n_tilde));
    } else {
        const int dim = k - 1;
        std::vector<PointMask> chosen;
        std::vector<std::uint8_t> sums(std::size_t{1} << dim, 0);
        std::uint64_t budget = std::uint64_t{1} << 32;
        if (!sidon_dfs(dim, n_tilde, chosen, sums, 0, budget))
            throw ResourceError("Sidon search failed for k=" + std::to_string(k) + ", n_tilde=" +
                                std::to_string(n_tilde));
        lower = chosen;
    }
    std::vector<PointMask> pts;
    for (PointMask x : lower)
        pts.push_back(top(k) | x);
    if (zero_sum_quadruples(lower) != 0)
        throw InvariantViolation("Sidon construction produced a dependent quadruple");
    return DesignSpec(k, std::move(pts), "sidon-k" + std::to_string(k));
}

DesignSpec design_from_complement(int k, const DesignSpec& d_tilde)
{
    if (d_tilde.k() != k)
        throw DomainError("complement has a different run size");
    if (!d_tilde.in_top_half())
        throw DomainError("complement points must lie in the top half");
    std::vector<PointMask> pts;
    for (PointMask p = top(k); p < 2 * top(k); ++p)
        if (!d_tilde.contains(p))
            pts.push_back(p);
    return DesignSpec(k, std::move(pts));
}

std::uint64_t zero_sum_quadruples(const std::vector<PointMask>& lower)
{
    // 3 * A_4 = sum_v C(m_v, 2), m_v = number of pairs with sum v.
    PointMask hi = 0;
    for (PointMask x : lower)
        hi |= x;
    const std::size_t size = std::size_t{1} << std::bit_width(hi);
    std::vector<std::uint64_t> pairs(size, 0);
    for (std::size_t a = 0; a < lower.size(); ++a)
        for (std::size_t b = a + 1; b < lower.size(); ++b)
            ++pairs[lower[a] ^ lower[b]];
    std::uint64_t total = 0;
    for (auto m : pairs)
        total += m * (m - 1) / 2;
    if (total % 3 != 0)
        throw InvariantViolation("pair-sum count is not divisible by 3");
    return total / 3;
}

} // namespace evendesign
