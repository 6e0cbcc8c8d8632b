#include "evendesign/bounds.hpp"

#include <cmath>

#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"
#include "evendesign/transforms.hpp"

namespace evendesign {

namespace {

void check_k(int k, int lo)
{
    if (k < lo || k > 24)
        throw DomainError("k must be in " + std::to_string(lo) + "..24, got " + std::to_string(k));
}

BigInt max_big(const BigInt& a, const BigInt& b)
{
    return a < b ? b : a;
}

} // namespace

int varshamov_max(int k)
{
    check_k(k, 3);
    const BigInt rhs = pow2(static_cast<unsigned>(k)) - 1;
    int x = 1;
    while (true) {
        const int y = x + 1;
        BigInt lhs = 0;
        for (int t = 1; t <= 4; ++t)
            lhs += binomial(y - 1, t);
        if (lhs > rhs)
            return x;
        x = y;
    }
}

std::pair<int, int> weak_ma_range(int k)
{
    check_k(k, 4);
    const int half = 1 << (k - 1);
    if (k % 2 == 1)
        return {half - (1 << ((k - 1) / 2)) - 1, half};
    return {half - (1 << ((k - 2) / 2)) - (1 << (k / 4)), half};
}

M6Estimate m6(int k)
{
    check_k(k, 4);
    M6Estimate e;
    e.k = k;
    e.constructive_lower = (1 << (k - 1)) - weak_ma_range(k).first;
    if (k <= 13 && (k % 2 == 1 || k <= 8))
        e.constructive_lower = std::max(e.constructive_lower, sidon_capacity(k));
    e.varshamov = varshamov_max(k);
    if (k == 6)
        e.known = 7;
    return e;
}

bool weak_ma_applicable(int n, int k)
{
    const auto [lo, hi] = weak_ma_range(k);
    if (n > hi || n < 0)
        return false;
    if (n >= lo)
        return true;
    const auto est = m6(k);
    return est.known && n >= (1 << (k - 1)) - *est.known;
}

BigInt weak_ma_a4(int n, int k)
{
    if (!weak_ma_applicable(n, k))
        throw DomainError("n=" + std::to_string(n) + " is outside the certified weak minimum aberration range for k=" +
                          std::to_string(k));
    return require_integer(a4_offset(n, k), "weak minimum aberration A_4");
}

Rational lb(int n, int k)
{
    check_k(k, 3);
    if (n < 0)
        throw DomainError("n must be nonnegative");
    const BigInt N = pow2(static_cast<unsigned>(k));
    const BigInt half = N / 2;
    const BigInt nn = n;
    const Rational first(nn * nn * nn * nn, 12 * N);
    const Rational second(3 * nn * nn - 2 * nn, 24);
    const Rational third(nn * nn * (half - nn) * (half - nn), (half - 1) * 12 * N);
    return first - second + third;
}

std::string to_string(BoundSource s)
{
    switch (s) {
    case BoundSource::complement_lp:
        return "complement-lp";
    case BoundSource::direct_lp:
        return "direct-lp";
    case BoundSource::exact_weak_ma:
        return "weak-ma-exact";
    }
    return "unknown";
}

bool in_complement_regime(int n, int k)
{
    const int N = 1 << k;
    return 16 * n > 5 * N && 2 * n < N;
}

BoundReport a4_bound(int n, int k)
{
    check_k(k, 4);
    BoundReport rep;
    rep.n = n;
    rep.k = k;
    rep.in_lp_regime = in_complement_regime(n, k);
    const bool weak = weak_ma_applicable(n, k);
    if (!rep.in_lp_regime && !weak)
        throw DomainError("no A_4 bound is certified for n=" + std::to_string(n) + ", k=" + std::to_string(k));

    const int nt = (1 << (k - 1)) - n;
    rep.offset = a4_offset(n, k);
    rep.lb_direct = lb(n, k);
    rep.lb_complement = lb(nt, k);
    rep.direct = ceil(rep.lb_direct);
    rep.via_complement = ceil(Rational(max_big(ceil(rep.lb_complement), BigInt(0))) + rep.offset);
    if (rep.via_complement >= rep.direct) {
        rep.bound = rep.via_complement;
        rep.source = BoundSource::complement_lp;
    } else {
        rep.bound = rep.direct;
        rep.source = BoundSource::direct_lp;
    }
    if (weak) {
        const BigInt exact = weak_ma_a4(n, k);
        if (exact < rep.bound && rep.in_lp_regime)
            throw InvariantViolation("LP bound exceeds an attained A_4 value");
        rep.bound = exact;
        rep.source = BoundSource::exact_weak_ma;
        rep.exact = true;
    }
    return rep;
}

Rational objective_from_h(int n, int k, const Rational& h)
{
    const BigInt N = pow2(static_cast<unsigned>(k));
    const BigInt nn = n;
    return Rational(BigInt(nn * nn * nn * nn), BigInt(12 * N)) - Rational(BigInt(3 * nn * nn - 2 * nn), BigInt(24)) + h / Rational(BigInt(12 * N));
}

ExtremePoint h_extreme(int n, int k)
{
    check_k(k, 3);
    const int half = 1 << (k - 1);
    if (n < 1 || n >= half)
        throw DomainError("h_extreme requires 1 <= n < 2^(k-1)");
    const BigInt Q = BigInt(half - n) * n;
    const BigInt S = half - 1;
    ExtremePoint e;
    e.h_min = Rational(BigInt(Q * Q), S);
    e.f_min = objective_from_h(n, k, e.h_min);
    const double root = std::sqrt(static_cast<double>(half - n) * n / static_cast<double>(half - 1));
    e.g_star = 0.5 * (n - root);
    e.l_star = 1.0 + e.g_star;

    // At the real extreme point all mass sits on g*, so h(l*, g*) must equal h_min.
    const double a = (n - 2 * e.l_star) * (n - 2 * e.l_star);
    const double b = (n - 2 * e.g_star) * (n - 2 * e.g_star);
    const double q = static_cast<double>(half - n) * n;
    const double s = half - 1;
    const double h = q * (a + b) - s * a * b;
    const double hm = to_double(e.h_min);
    if (std::abs(h - hm) > 1e-12 * std::max(1.0, std::abs(hm)))
        throw InvariantViolation("h at the extreme point does not match h_min");
    if (e.f_min != lb(n, k))
        throw InvariantViolation("objective at h_min does not reproduce LB");
    return e;
}

std::optional<Rational> h_two_point(int n, int k, int l, int g)
{
    const int half = 1 << (k - 1);
    const BigInt Q = BigInt(half - n) * n;
    const BigInt S = half - 1;
    const BigInt a = BigInt(n - 2 * l) * (n - 2 * l);
    const BigInt b = BigInt(n - 2 * g) * (n - 2 * g);
    if (a == b)
        return std::nullopt;
    const BigInt den = b - a;
    const Rational x_l = ratio(BigInt(S * b - Q), den);
    const Rational x_g = ratio(BigInt(Q - S * a), den);
    if (x_l < 0 || x_g < 0)
        return std::nullopt;
    return Rational(Q * (a + b) - S * a * b);
}

bool FoldedWeightVector::satisfies_constraints(int dim) const
{
    Rational sum = 0;
    Rational second = 0;
    for (int j = 1; j < static_cast<int>(x.size()); ++j) {
        sum += x[static_cast<std::size_t>(j)];
        second += x[static_cast<std::size_t>(j)] * (n - 2 * j) * (n - 2 * j);
    }
    const BigInt half = pow2(static_cast<unsigned>(dim - 1));
    return sum == Rational(half - 1) && second == Rational((half - n) * n);
}

Rational FoldedWeightVector::objective(int dim) const
{
    Rational h = 0;
    for (int j = 1; j < static_cast<int>(x.size()); ++j) {
        const BigInt w = n - 2 * j;
        h += x[static_cast<std::size_t>(j)] * Rational(w * w * w * w);
    }
    return objective_from_h(n, dim, h);
}

FoldedWeightVector fold_weights(const WeightDistribution& wd)
{
    const int n = wd.n();
    if (n < 1)
        throw DomainError("empty weight distribution");
    for (int j = 0; j <= n; ++j)
        if (wd.counts[static_cast<std::size_t>(j)] != wd.counts[static_cast<std::size_t>(n - j)])
            throw DomainError("folding requires a symmetric weight distribution");
    FoldedWeightVector f;
    f.n = n;
    f.x.assign(static_cast<std::size_t>(n / 2) + 1, 0);
    for (int j = 1; j <= n / 2; ++j) {
        Rational v(static_cast<long long>(wd.counts[static_cast<std::size_t>(j)]));
        if (2 * j == n)
            v /= 2;
        f.x[static_cast<std::size_t>(j)] = v;
    }
    return f;
}

} // namespace evendesign
