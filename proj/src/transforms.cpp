#include "evendesign/transforms.hpp"

#include <map>
#include <mutex>
#include <string>

#include "evendesign/errors.hpp"

namespace evendesign {

namespace {

// Coefficients of (1 + sign*z)^e up to z^max_i, e possibly negative.
std::vector<BigInt> binomial_series(std::int64_t e, int sign, int max_i)
{
    std::vector<BigInt> out(static_cast<std::size_t>(max_i) + 1);
    BigInt c = 1;
    for (int t = 0; t <= max_i; ++t) {
        out[static_cast<std::size_t>(t)] = (sign < 0 && (t & 1)) ? BigInt(-c) : c;
        // C(e, t+1) = C(e, t) (e - t) / (t + 1), exact at every step
        c = c * (e - t) / (t + 1);
    }
    return out;
}

std::vector<BigInt> truncated_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int max_i)
{
    std::vector<BigInt> out(static_cast<std::size_t>(max_i) + 1, 0);
    for (int i = 0; i <= max_i; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0)
            continue;
        for (int j = 0; i + j <= max_i; ++j)
            out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return out;
}

void check_r(int r)
{
    if (r < 1 || r > 16)
        throw DomainError("block dimension r must be in 1..16, got " + std::to_string(r));
}

struct RTables {
    std::vector<Rational> alpha;      // index s, 1..2^r-2 (alpha[0] unused)
    std::vector<Rational> alpha_full; // index s, 1..2^r-1
    std::vector<Rational> gamma;      // index s, 0..2^r-1
    std::vector<Rational> punctured;  // index s, 1..2^r-1
};

const RTables& tables(int r)
{
    static std::mutex mutex;
    static std::map<int, RTables> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(r); it != cache.end())
        return it->second;

    const std::int64_t q = std::int64_t{1} << r;
    const std::int64_t half = q / 2;
    const int full = static_cast<int>(q - 1);
    const Rational scale(BigInt(1), BigInt(q));
    RTables t;

    // Length 2^r - 1 (PG(r-1,2)): all nonzero codewords of the simplex code have weight 2^(r-1).
    const auto p_full = krawtchouk_row(half, full, full);
    const auto c_full = binomial_series(full, +1, full);
    t.gamma.resize(static_cast<std::size_t>(full) + 1);
    t.alpha_full.resize(static_cast<std::size_t>(full) + 1);
    for (int s = 0; s <= full; ++s) {
        const auto us = static_cast<std::size_t>(s);
        t.gamma[us] = scale * Rational(c_full[us] + p_full[us] * (q - 1));
        t.alpha_full[us] = scale * Rational(c_full[us] - p_full[us]);
    }

    // Length 2^r - 2 (PG(r-1,2) without one point p): weights 2^(r-1) (v.p = 0) and 2^(r-1) - 1 (v.p = 1).
    const int punct = static_cast<int>(q - 2);
    t.alpha.resize(static_cast<std::size_t>(std::max(punct, 1)) + 1);
    t.punctured.resize(static_cast<std::size_t>(full) + 1);
    if (punct >= 0) {
        const auto p_even = krawtchouk_row(half, punct, punct);
        const auto p_odd = krawtchouk_row(half - 1, punct, punct);
        const auto c_punct = binomial_series(punct, +1, punct);
        for (int s = 1; s <= punct; ++s) {
            const auto us = static_cast<std::size_t>(s);
            t.alpha[us] = s == 1 ? Rational(1)
                                 : scale * Rational(c_punct[us] + p_even[us] * (half - 1) - p_odd[us] * half);
        }
        // zero-sum (s-1)-subsets of the punctured set
        for (int s = 1; s <= full; ++s) {
            const int j = s - 1;
            if (j > punct)
                continue;
            const auto uj = static_cast<std::size_t>(j);
            t.punctured[static_cast<std::size_t>(s)] =
                scale * Rational(c_punct[uj] + p_even[uj] * (half - 1) + p_odd[uj] * half);
        }
    }
    return cache.emplace(r, std::move(t)).first->second;
}

} // namespace

BigInt binomial(std::int64_t x, int t)
{
    if (t < 0)
        return 0;
    BigInt c = 1;
    for (int i = 0; i < t; ++i)
        c = c * (x - i) / (i + 1);
    return c;
}

std::vector<BigInt> krawtchouk_row(std::int64_t j, int n, int max_i)
{
    if (max_i < 0)
        return {};
    return truncated_product(binomial_series(j, -1, max_i), binomial_series(n - j, +1, max_i), max_i);
}

BigInt krawtchouk(int i, std::int64_t j, int n)
{
    if (i < 0)
        return 0;
    BigInt sum = 0;
    for (int s = 0; s <= i; ++s) {
        BigInt term = binomial(j, s) * binomial(n - j, i - s);
        if (s & 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

Rational alpha(int r, int s)
{
    check_r(r);
    const std::int64_t q = std::int64_t{1} << r;
    if (s < 1 || s > q - 2)
        throw DomainError("alpha_r(s) requires 1 <= s <= 2^r - 2");
    return tables(r).alpha[static_cast<std::size_t>(s)];
}

Rational alpha_full(int r, int s)
{
    check_r(r);
    const std::int64_t q = std::int64_t{1} << r;
    if (s < 1 || s > q - 1)
        throw DomainError("alpha_full requires 1 <= s <= 2^r - 1");
    return tables(r).alpha_full[static_cast<std::size_t>(s)];
}

Rational gamma(int r, int s)
{
    check_r(r);
    const std::int64_t q = std::int64_t{1} << r;
    if (s < 0 || s > q - 1)
        throw DomainError("gamma_r(s) requires 0 <= s <= 2^r - 1");
    return tables(r).gamma[static_cast<std::size_t>(s)];
}

Rational punctured_zero_sum_count(int r, int s)
{
    check_r(r);
    const std::int64_t q = std::int64_t{1} << r;
    if (s < 1 || s > q - 1)
        throw DomainError("punctured_zero_sum_count requires 1 <= s <= 2^r - 1");
    return tables(r).punctured[static_cast<std::size_t>(s)];
}

std::vector<BigInt> krawtchouk_transform(const std::vector<BigInt>& a, int n)
{
    if (static_cast<int>(a.size()) != n + 1)
        throw DomainError("transform input must have n + 1 entries");
    std::vector<BigInt> out(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 0; j <= n; ++j) {
        const BigInt& aj = a[static_cast<std::size_t>(j)];
        if (aj == 0)
            continue;
        const auto row = krawtchouk_row(j, n, n);
        for (int i = 0; i <= n; ++i)
            out[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)] * aj;
    }
    return out;
}

WordlengthPattern macwilliams(const WeightDistribution& a_prime, int n, int dim)
{
    if (a_prime.n() != n)
        throw DomainError("weight distribution length does not match n");
    if (dim < 0 || dim > 62 || a_prime.total() != (std::uint64_t{1} << dim))
        throw DomainError("weight distribution does not sum to 2^dim");
    std::vector<BigInt> a(a_prime.counts.begin(), a_prime.counts.end());
    const auto raw = krawtchouk_transform(a, n);
    WordlengthPattern out(n);
    for (int i = 0; i <= n; ++i) {
        const BigInt& v = raw[static_cast<std::size_t>(i)];
        const BigInt q = v >> dim;
        if ((q << dim) != v || q < 0)
            throw InvariantViolation("MacWilliams transform produced a non-integral or negative count at i=" +
                                     std::to_string(i));
        if (i == 0) {
            if (q != 1)
                throw InvariantViolation("MacWilliams transform: A_0 != 1");
            continue;
        }
        out.counts[static_cast<std::size_t>(i)] = q;
    }
    return out;
}

Rational power_moment(int i, const WeightDistribution& a_prime, int n, int dim)
{
    if (i < 0 || i > 8 || (i & 1))
        throw DomainError("power moments are supported for even i <= 8");
    if (a_prime.n() != n)
        throw DomainError("weight distribution length does not match n");
    BigInt sum = 0;
    for (int j = 0; j <= n; ++j) {
        BigInt base = n - 2 * j;
        sum += boost::multiprecision::pow(base, static_cast<unsigned>(i)) * a_prime.counts[static_cast<std::size_t>(j)];
    }
    return Rational(sum, pow2(static_cast<unsigned>(dim)));
}

BigInt karpovsky_constant(int i, int n)
{
    if (i == 2)
        return n;
    if (i == 4)
        return BigInt(n) * (3 * n - 2);
    throw DomainError("the Karpovsky constant is a pure constant only for i = 2 and i = 4");
}

BigInt moment_weight(int i, int w, int n)
{
    if (w < 0 || w > n || i < 0)
        throw DomainError("moment_weight requires 0 <= w <= n and i >= 0");
    const auto row_j = [&](int j) { return krawtchouk(j, w, n); };
    BigInt sum = 0;
    for (int j = 0; j <= n; ++j) {
        BigInt base = n - 2 * j;
        sum += row_j(j) * boost::multiprecision::pow(base, static_cast<unsigned>(i));
    }
    const BigInt den = pow2(static_cast<unsigned>(n));
    if (sum % den != 0)
        throw InvariantViolation("moment_weight is not integral");
    return sum / den;
}

BigInt a4_from_moments(const WeightDistribution& a_prime, int n, int dim)
{
    const Rational s4 = power_moment(4, a_prime, n, dim);
    return require_integer((s4 - Rational(karpovsky_constant(4, n))) / 24, "A_4 from power moments");
}

} // namespace evendesign
