#include "evendesign/identities.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "evendesign/errors.hpp"
#include "evendesign/transforms.hpp"

namespace evendesign {

namespace {

void check_nk(int n, int k)
{
    if (k < 3 || k > 20)
        throw DomainError("k must be in 3..20 for the complement identities");
    if (n < 0 || n > (1 << (k - 1)))
        throw DomainError("n must lie in 0..2^(k-1)");
}

void check_nkr(int n, int k, int r)
{
    if (k < 2 || k > 20)
        throw DomainError("k must be in 2..20 for the blocked identity");
    if (r < 1 || r >= k)
        throw DomainError("block dimension r must satisfy 1 <= r < k");
    if (n < 0 || residual_size(n, k, r) < 0)
        throw DomainError("n exceeds the points available outside the block group");
}

int floor_half(int x)
{
    return x >= 0 ? x / 2 : -((-x + 1) / 2);
}

BigInt pattern_at(const std::vector<BigInt>& v, int i)
{
    return (i >= 0 && i < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(i)] : BigInt(0);
}

void check_closure(int n_res, const SplitWordlengthPattern& residual)
{
    for (int s = 1; s <= n_res; ++s) {
        const BigInt a0 = residual.at0(s);
        const BigInt a1 = residual.at1(s);
        const BigInt expected = (s % 2 == 0) ? BigInt(binomial(n_res, s) - a0) : BigInt(0);
        if (a1 != expected || (s % 2 == 1 && a0 != 0))
            throw DomainError("residual split pattern violates the hyperplane closure at s=" + std::to_string(s));
    }
}

// A_{i,0}(D_B) = constant + sum_s a0[s] A_{s,0}(D_R) + sum_s a1[s] A_{s,1}(D_R).
struct LinearForm {
    Rational constant;
    std::vector<Rational> a0;
    std::vector<Rational> a1;
};

LinearForm residual_form(int i, int n, int k, int r)
{
    const int q = 1 << r;
    const auto C = [&](int j) { return Rational(identity_cij(i, j, n, k)); };
    LinearForm f;
    f.a0.assign(static_cast<std::size_t>(i) + 1, 0);
    f.a1.assign(static_cast<std::size_t>(i) + 1, 0);

    // A residual word of length s joins t block-group points; the empty word counts once.
    f.constant = identity_c(i, n, k);
    for (int t = 0; t <= i && t <= q - 1; ++t)
        f.constant += C(t) * gamma(r, t);
    for (int s = 1; s <= i; ++s) {
        for (int t = 0; t <= i - s && t <= q - 1; ++t) {
            f.a0[static_cast<std::size_t>(s)] += C(t + s) * gamma(r, t);
            if (t >= 1)
                f.a1[static_cast<std::size_t>(s)] += C(t + s) * alpha_full(r, t);
        }
    }
    return f;
}

// A_{2u}(D) = constant + A_2u(D~) + sum_l block[l] (C(n~,2l) - A_2l(D~)) + sum_l treat[l] A_2l(D~).
LinearForm complement_form(int u, int n, int k)
{
    const int r = k - 1;
    const int i = 2 * u;
    const IdentityConstants c = identity_constants(u, n, k);
    const auto cij = [&](int j) { return Rational(c.c_2u_j[static_cast<std::size_t>(j)]); };
    LinearForm f;
    f.constant = c.c_2u + cij(0) + c.gamma_2u;
    f.a0.assign(static_cast<std::size_t>(u), 0); // treat, by l
    f.a1.assign(static_cast<std::size_t>(u), 0); // block, by l
    for (int l = 1; l <= u - 1; ++l) {
        Rational coef = alpha_full(r, 2 * (u - l));
        for (int t = 1; t <= i - 1 - 2 * l; ++t)
            coef += cij(t + 2 * l) * alpha_full(r, t);
        f.a1[static_cast<std::size_t>(l)] = coef;
    }
    for (int l = 2; l <= u - 1; ++l) {
        Rational coef = gamma(r, 2 * (u - l)) + cij(2 * l);
        for (int t = 1; t <= i - 1 - 2 * l; ++t)
            coef += cij(t + 2 * l) * gamma(r, t);
        f.a0[static_cast<std::size_t>(l)] = coef;
    }
    return f;
}

BigInt lcm_denominator(const BigInt& acc, const Rational& x)
{
    const BigInt d = boost::multiprecision::denominator(x);
    return acc * d / boost::multiprecision::gcd(acc, d);
}

BigInt scaled(const Rational& x, const BigInt& denom)
{
    return require_integer(x * Rational(denom), "scaled identity coefficient");
}

} // namespace

Rational identity_c(int i, int n, int k)
{
    const std::int64_t half = std::int64_t{1} << (k - 1);
    return Rational(BigInt(krawtchouk(i, 0, n) - krawtchouk(i, half, n)), pow2(static_cast<unsigned>(k)));
}

BigInt identity_cij(int i, int j, int n, int k)
{
    if (j > i)
        return 0;
    const int h = floor_half(i - j);
    const std::int64_t half = std::int64_t{1} << (k - 1);
    const BigInt b = binomial(static_cast<std::int64_t>(n) - half, h);
    return ((i - h) % 2 == 0) ? b : BigInt(-b);
}

Rational a4_offset(int n, int k)
{
    check_nk(n, k);
    const std::int64_t half = std::int64_t{1} << (k - 1);
    return Rational(BigInt(binomial(n, 4) - binomial(half - n, 4)), BigInt(half - 3));
}

int residual_size(int n, int k, int r)
{
    return (1 << k) - (1 << r) - n;
}

IdentityConstants identity_constants(int u, int n, int k)
{
    check_nk(n, k);
    IdentityConstants c;
    c.u = u;
    const int i = 2 * u;
    c.c_2u = identity_c(i, n, k);
    c.c_2u_j.resize(static_cast<std::size_t>(i) + 1);
    for (int j = 0; j <= i; ++j)
        c.c_2u_j[static_cast<std::size_t>(j)] = identity_cij(i, j, n, k);
    const int cap = (1 << (k - 1)) - 1;
    c.gamma_2u = 0;
    for (int s = 3; s <= i && s <= cap; ++s)
        c.gamma_2u += Rational(c.c_2u_j[static_cast<std::size_t>(s)]) * gamma(k - 1, s);
    return c;
}

// ---------------------------------------------------------------------------

ComplementIdentity::ComplementIdentity(int n, int k) : n_(n), k_(k)
{
    check_nk(n, k);
    n_tilde_ = (1 << (k - 1)) - n;
    std::vector<LinearForm> forms(static_cast<std::size_t>(n / 2) + 1);
    denom_ = 1;
    for (int u = 2; 2 * u <= n; ++u) {
        auto& f = forms[static_cast<std::size_t>(u)];
        f = complement_form(u, n, k);
        denom_ = lcm_denominator(denom_, f.constant);
        for (const auto& x : f.a0)
            denom_ = lcm_denominator(denom_, x);
        for (const auto& x : f.a1)
            denom_ = lcm_denominator(denom_, x);
    }
    constant_.assign(forms.size(), 0);
    coef_block_.resize(forms.size());
    coef_treat_.resize(forms.size());
    for (int u = 2; 2 * u <= n; ++u) {
        const auto uu = static_cast<std::size_t>(u);
        constant_[uu] = scaled(forms[uu].constant, denom_);
        for (const auto& x : forms[uu].a1)
            coef_block_[uu].push_back(scaled(x, denom_));
        for (const auto& x : forms[uu].a0)
            coef_treat_[uu].push_back(scaled(x, denom_));
    }
}

WordlengthPattern ComplementIdentity::apply(const WordlengthPattern& wlp_tilde) const
{
    if (wlp_tilde.n() != n_tilde_)
        throw DomainError("complement pattern has " + std::to_string(wlp_tilde.n()) + " factors, expected " +
                          std::to_string(n_tilde_));
    if (!wlp_tilde.odd_free())
        throw DomainError("complement pattern has odd-length words");
    WordlengthPattern out(n_);
    for (int u = 2; 2 * u <= n_; ++u) {
        const auto uu = static_cast<std::size_t>(u);
        BigInt v = constant_[uu] + denom_ * wlp_tilde.at(2 * u);
        for (int l = 1; l < u; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            const BigInt at = wlp_tilde.at(2 * l);
            v += coef_block_[uu][ul] * (binomial(n_tilde_, 2 * l) - at);
            v += coef_treat_[uu][ul] * at;
        }
        const int i = 2 * u;
        if (v % denom_ != 0)
            throw InvariantViolation("complement identity gave a non-integral A_" + std::to_string(i));
        const BigInt a = v / denom_;
        if (a < 0)
            throw InvariantViolation("complement identity gave a negative count at i=" + std::to_string(i));
        out.counts[uu * 2] = a;
    }
    return out;
}

const ComplementIdentity& complement_identity(int n, int k)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<ComplementIdentity>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, k}];
    if (!slot)
        slot = std::make_unique<ComplementIdentity>(n, k);
    return *slot;
}

WordlengthPattern wlp_from_complement(int n, int k, const WordlengthPattern& wlp_tilde)
{
    return complement_identity(n, k).apply(wlp_tilde);
}

// ---------------------------------------------------------------------------

ResidualIdentity::ResidualIdentity(int n, int k, int r) : n_(n), k_(k), r_(r)
{
    check_nkr(n, k, r);
    n_res_ = evendesign::residual_size(n, k, r);
    std::vector<LinearForm> forms(static_cast<std::size_t>(n) + 1);
    denom_ = 1;
    for (int i = 3; i <= n; ++i) {
        auto& f = forms[static_cast<std::size_t>(i)];
        f = residual_form(i, n, k, r);
        denom_ = lcm_denominator(denom_, f.constant);
        for (const auto& x : f.a0)
            denom_ = lcm_denominator(denom_, x);
        for (const auto& x : f.a1)
            denom_ = lcm_denominator(denom_, x);
    }
    constant_.assign(forms.size(), 0);
    coef_a0_.resize(forms.size());
    coef_a1_.resize(forms.size());
    for (int i = 3; i <= n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        constant_[ui] = scaled(forms[ui].constant, denom_);
        for (const auto& x : forms[ui].a0)
            coef_a0_[ui].push_back(scaled(x, denom_));
        for (const auto& x : forms[ui].a1)
            coef_a1_[ui].push_back(scaled(x, denom_));
    }
}

std::vector<BigInt> ResidualIdentity::apply(const SplitWordlengthPattern& residual) const
{
    if (residual.n() > n_res_)
        throw DomainError("residual split pattern is longer than the residual point set");
    if (r_ == k_ - 1)
        check_closure(n_res_, residual);
    std::vector<BigInt> out(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = 3; i <= n_; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        BigInt v = constant_[ui];
        for (int s = 0; s <= i; ++s) {
            const auto us = static_cast<std::size_t>(s);
            if (coef_a0_[ui][us] != 0)
                v += coef_a0_[ui][us] * pattern_at(residual.a0, s);
            if (coef_a1_[ui][us] != 0)
                v += coef_a1_[ui][us] * pattern_at(residual.a1, s);
        }
        if (v % denom_ != 0)
            throw InvariantViolation("residual identity gave a non-integral A_{" + std::to_string(i) + ",0}");
        const BigInt a = v / denom_;
        if (a < 0)
            throw InvariantViolation("residual identity gave a negative count at i=" + std::to_string(i));
        out[ui] = a;
    }
    return out;
}

const ResidualIdentity& residual_identity(int n, int k, int r)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<ResidualIdentity>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, k, r}];
    if (!slot)
        slot = std::make_unique<ResidualIdentity>(n, k, r);
    return *slot;
}

Rational split_wlp_from_residual(int i, int n, int k, int r, const SplitWordlengthPattern& residual)
{
    check_nkr(n, k, r);
    if (i < 3 || i > n)
        throw DomainError("split identity requires 3 <= i <= n");
    const int n_res = residual_size(n, k, r);
    if (residual.n() > n_res)
        throw DomainError("residual split pattern is longer than the residual point set");
    if (r == k - 1)
        check_closure(n_res, residual);
    const LinearForm f = residual_form(i, n, k, r);
    Rational v = f.constant;
    for (int s = 0; s <= i; ++s) {
        v += f.a0[static_cast<std::size_t>(s)] * Rational(pattern_at(residual.a0, s));
        v += f.a1[static_cast<std::size_t>(s)] * Rational(pattern_at(residual.a1, s));
    }
    return v;
}

std::vector<BigInt> split_a0_from_residual(int n, int k, int r, const SplitWordlengthPattern& residual)
{
    return residual_identity(n, k, r).apply(residual);
}

} // namespace evendesign
