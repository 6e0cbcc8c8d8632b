#include <doctest.h>

#include <random>

#include "evendesign/construct.hpp"
#include "evendesign/design.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"
#include "oracles.hpp"

using namespace evendesign;

TEST_CASE("a4 offset values")
{
    CHECK(a4_offset(24, 6) == 364);
    CHECK(a4_offset(55, 7) == 5589);
    CHECK(a4_offset(14, 5) == 77);
    for (int k = 4; k <= 9; ++k)
        CHECK(a4_offset(1 << (k - 2), k) == 0);
}

TEST_CASE("complement identity on a two-point complement")
{
    const DesignSpec c(5, {16, 17});
    const WordlengthPattern w = wlp_from_complement(14, 5, wordlength_pattern(c));
    CHECK(w.at(4) == 77);
    CHECK(w == defining_words_bruteforce(design_from_complement(5, c)));
}

TEST_CASE("empty complement gives the maximal even design")
{
    for (int k = 3; k <= 7; ++k) {
        const int half = 1 << (k - 1);
        CHECK(wlp_from_complement(half, k, WordlengthPattern(0)) == wordlength_pattern(maximal_even(k)));
    }
}

TEST_CASE("complement identity at the 24-factor 64-run design")
{
    const WordlengthPattern tilde = wordlength_pattern(complement_construction(6, 8));
    CHECK(wlp_from_complement(24, 6, tilde).at(4) == 365);
}

TEST_CASE("complement identity against brute force on random complements")
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 120; ++t) {
        const int k = 4 + static_cast<int>(rng() % 3);
        std::vector<PointMask> top = maximal_even(k).points();
        std::shuffle(top.begin(), top.end(), rng);
        // The direct scan enumerates 2^n subsets of D, so keep n <= 18.
        const std::size_t min_nt = top.size() > 18 ? top.size() - 18 : 0;
        top.resize(min_nt + rng() % (top.size() - min_nt + 1));
        const DesignSpec c(k, top);
        const DesignSpec d = design_from_complement(k, c);
        const WordlengthPattern w = wlp_from_complement(d.n(), k, wordlength_pattern(c));
        const auto direct = oracle::zero_sum_subsets(d.points());
        for (int i = 1; i <= d.n(); ++i)
            CHECK(w.at(i) == direct[static_cast<std::size_t>(i)]);
        if (d.n() >= 4)
            CHECK(Rational(BigInt(w.at(4) - wordlength_pattern(c).at(4))) == a4_offset(d.n(), k));
    }
}

TEST_CASE("complement identity input checks")
{
    CHECK_THROWS_AS(wlp_from_complement(14, 5, WordlengthPattern(3)), DomainError);
    WordlengthPattern odd(2);
    odd.counts[1] = 1;
    CHECK_THROWS_AS(wlp_from_complement(14, 5, odd), DomainError);
    CHECK_THROWS_AS(wlp_from_complement(20, 5, WordlengthPattern(0)), DomainError);
}

TEST_CASE("identity constants")
{
    const IdentityConstants c = identity_constants(2, 24, 6);
    CHECK(c.c_2u_j.size() == 5);
    CHECK(c.c_2u_j[4] == 1);
    CHECK(identity_cij(4, 5, 24, 6) == 0);
    CHECK(identity_cij(3, 3, 24, 6) == -1);
}

TEST_CASE("blocked identity at r = k-1 reduces to the complement identity")
{
    std::mt19937_64 rng(67);
    for (int t = 0; t < 60; ++t) {
        const int k = 4 + static_cast<int>(rng() % 2);
        std::vector<PointMask> top = maximal_even(k).points();
        std::shuffle(top.begin(), top.end(), rng);
        top.resize(4 + rng() % (top.size() - 4));
        const DesignSpec d(k, top);
        const EvenPartition part = complement_in_maximal_even(d);
        const SplitWordlengthPattern res = split_wordlength_bruteforce(part, PartitionSide::complement);
        const Rational a4 = split_wlp_from_residual(4, d.n(), k, k - 1, res);
        CHECK(a4 == Rational(wlp_from_complement(d.n(), k, wordlength_pattern(part.complement())).at(4)));
    }
}

TEST_CASE("blocked identity against the direct subset scan at k=4, r=2")
{
    const int k = 4;
    const auto gens = hyperplane_generators(3);
    std::vector<PointMask> pool;
    for (PointMask p = 4; p < 16; ++p)
        pool.push_back(p);
    for (std::uint32_t m = 0; m < (1U << pool.size()); ++m) {
        std::vector<PointMask> t, rest;
        for (std::size_t j = 0; j < pool.size(); ++j)
            ((m >> j) & 1U ? t : rest).push_back(pool[j]);
        if (t.size() < 3)
            continue;
        const auto treat = oracle::split_words(k, t, gens);
        const auto res = oracle::split_words(k, rest, gens);
        SplitWordlengthPattern s;
        s.r = 2;
        for (auto x : res.a0)
            s.a0.push_back(x);
        for (auto x : res.a1)
            s.a1.push_back(x);
        const int n = static_cast<int>(t.size());
        for (int i = 3; i <= n; ++i)
            CHECK(split_wlp_from_residual(i, n, k, 2, s) == Rational(treat.a0[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("blocked identity with a zero residual and all of the top half")
{
    for (int k = 3; k <= 6; ++k) {
        const int half = 1 << (k - 1);
        SplitWordlengthPattern empty;
        empty.r = k - 1;
        empty.a0 = {0};
        empty.a1 = {0};
        const auto a = split_a0_from_residual(half, k, k - 1, empty);
        const WordlengthPattern w = wordlength_pattern(maximal_even(k));
        for (int i = 3; i <= half; ++i)
            CHECK(a[static_cast<std::size_t>(i)] == w.at(i));
    }
}

TEST_CASE("blocked identity rejects a residual that breaks the closure")
{
    SplitWordlengthPattern bad;
    bad.r = 3;
    bad.a0 = {0, 0, 0};
    bad.a1 = {0, 0, 0}; // closure needs A_{2,1} = C(2,2) - A_{2,0} = 1
    CHECK_THROWS_AS(split_wlp_from_residual(4, 6, 4, 3, bad), DomainError);
    CHECK_THROWS_AS(split_wlp_from_residual(2, 6, 4, 2, bad), DomainError);
    CHECK_THROWS_AS(residual_identity(14, 4, 2), DomainError);
}
