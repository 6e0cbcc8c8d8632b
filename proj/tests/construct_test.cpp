#include <doctest.h>

#include <random>

#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"
#include "oracles.hpp"

using namespace evendesign;

namespace {

std::vector<std::uint32_t> lower_parts(const DesignSpec& d)
{
    std::vector<std::uint32_t> out;
    const PointMask mask = (PointMask{1} << (d.k() - 1)) - 1;
    for (auto p : d.points())
        out.push_back(p & mask);
    return out;
}

} // namespace

TEST_CASE("family names")
{
    for (Family f : {Family::independent, Family::k_plus_1, Family::k_plus_2, Family::k_plus_3, Family::sidon})
        CHECK(parse_family(to_string(f)) == f);
    CHECK_THROWS_AS(parse_family("k+4"), ConfigError);
}

TEST_CASE("independent points are fixed")
{
    CHECK(independent_points(4, 4) == std::vector<PointMask>{8, 9, 10, 12});
    CHECK_THROWS_AS(independent_points(4, 5), DomainError);
}

TEST_CASE("k=6, n_tilde=8 gives I = 1237 = 345678")
{
    CHECK(classify_complement(6, 8).family == Family::k_plus_2);
    const DesignSpec c = complement_construction(6, 8);
    const WordlengthPattern w = wordlength_pattern(c);
    CHECK(w.at(4) == 1);
    CHECK(w.at(6) == 2);
    CHECK(w.total() == 3);
    CHECK(wordlength_pattern(design_from_complement(6, c)).at(4) == 365);
}

TEST_CASE("k=7, n_tilde=9 gives I = 123458 = 345679")
{
    const DesignSpec c = complement_construction(7, 9);
    const WordlengthPattern w = wordlength_pattern(c);
    CHECK(w.resolution() == 6);
    CHECK(w.at(6) == 3);
    CHECK(w.total() == 3);
    CHECK(wordlength_pattern(design_from_complement(7, c)).at(4) == 5589);
}

TEST_CASE("independent family has no words")
{
    for (int k = 4; k <= 9; ++k) {
        CHECK(wordlength_pattern(complement_construction(k, k)).total() == 0);
        CHECK(complement_construction(k, 0).n() == 0);
    }
}

TEST_CASE("k+1 family")
{
    const WordlengthPattern w5 = wordlength_pattern(k_plus_1_complement(5));
    CHECK(w5.total() == 1);
    CHECK(w5.at(6) == 1);
    const WordlengthPattern w6 = wordlength_pattern(k_plus_1_complement(6));
    CHECK(w6.total() == 1);
    CHECK(w6.at(6) == 1);
    for (int k = 4; k <= 10; ++k)
        CHECK(k_plus_1_complement(k).in_top_half());
}

TEST_CASE("constructions are even and of maximum rank")
{
    for (int k = 4; k <= 10; ++k)
        for (int nt = 0; nt <= k + 3; ++nt) {
            const DesignSpec c = complement_construction(k, nt);
            CHECK(c.n() == nt);
            CHECK(c.in_top_half());
            CHECK(c.rank() == std::min(nt, k));
        }
    CHECK_THROWS_AS(complement_construction(6, 10), DomainError);
    CHECK_THROWS_AS(complement_construction(3, 2), DomainError);
}

TEST_CASE("k+3 words are even for every n_tilde")
{
    for (int nt = 7; nt <= 30; ++nt) {
        const auto w = k_plus_3_words(nt);
        REQUIRE(w.size() == 3);
        for (auto x : {w[0], w[1], w[2], w[0] ^ w[1], w[0] ^ w[2], w[1] ^ w[2], w[0] ^ w[1] ^ w[2]})
            CHECK(__builtin_popcountll(x) % 2 == 0);
        std::uint64_t all = 0;
        for (auto x : w)
            all |= x;
        // With one letter beyond a multiple of seven, that letter stays word-free.
        const int word_free = nt % 7 == 1 ? 1 : 0;
        CHECK(__builtin_popcountll(all) == nt - word_free);
    }
}

TEST_CASE("design from words reproduces the words")
{
    // 1237 and 345678 over 8 letters.
    const std::vector<std::uint64_t> words = {0b01000111, 0b11111100};
    const DesignSpec d = design_from_words(8, words);
    CHECK(d.in_top_half());
    const WordlengthPattern w = wordlength_pattern(d);
    CHECK(w.at(4) == 1);
    CHECK(w.at(6) == 2);
    CHECK_THROWS_AS(design_from_words(4, {0b0111}), DomainError);
}

TEST_CASE("norm-one circle is a Sidon set")
{
    for (int s = 1; s <= 5; ++s) {
        const auto circle = norm_one_circle(s);
        CHECK(circle.size() == (std::size_t{1} << s) + 1);
        CHECK(oracle::zero_sum_quadruples(circle) == 0);
    }
}

TEST_CASE("Sidon complements")
{
    const DesignSpec c79 = sidon_complement(7, 9);
    CHECK(oracle::zero_sum_quadruples(lower_parts(c79)) == 0);
    CHECK(wordlength_pattern(design_from_complement(7, c79)).at(4) == 5589);

    const DesignSpec c67 = sidon_complement(6, 7);
    CHECK(oracle::zero_sum_quadruples(lower_parts(c67)) == 0);
    CHECK(c67.rank() == 6);

    CHECK(sidon_complement(7, 2).n() == 2);
    for (int k = 4; k <= 9; ++k) {
        const DesignSpec c = sidon_complement(k, sidon_capacity(k));
        CHECK(c.in_top_half());
        CHECK(wordlength_pattern(c).at(4) == 0);
        CHECK_THROWS_AS(sidon_complement(k, sidon_capacity(k) + 1), DomainError);
    }
    CHECK(sidon_capacity(7) == 9);
    CHECK(sidon_capacity(6) == 7);
}

TEST_CASE("zero-sum quadruple counter against the direct scan")
{
    std::mt19937_64 rng(83);
    for (int t = 0; t < 300; ++t) {
        std::vector<PointMask> v;
        for (PointMask x = 0; x < 32; ++x)
            if (rng() % 3 == 0)
                v.push_back(x);
        CHECK(static_cast<std::int64_t>(zero_sum_quadruples(v)) == oracle::zero_sum_quadruples(v));
    }
}

TEST_CASE("design from complement is an involution with the complement operation")
{
    std::mt19937_64 rng(89);
    for (int t = 0; t < 50; ++t) {
        std::vector<PointMask> top = maximal_even(6).points();
        std::shuffle(top.begin(), top.end(), rng);
        top.resize(rng() % 33);
        const DesignSpec c(6, top);
        CHECK(complement_in_maximal_even(design_from_complement(6, c)).complement() == c);
    }
    CHECK(design_from_complement(5, DesignSpec(5, {})) == maximal_even(5));
}
