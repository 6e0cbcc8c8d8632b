#include <doctest.h>

#include <random>

#include "evendesign/construct.hpp"
#include "evendesign/design.hpp"
#include "evendesign/errors.hpp"
#include "oracles.hpp"

using namespace evendesign;

namespace {

// I = 1237 = 345678 in 64 runs: factors 1..6 basic, 7 = 123, 8 = 34567 = 12456.
DesignSpec relation_1237_345678()
{
    return DesignSpec(6, {1, 2, 4, 8, 16, 32, 1 | 2 | 4, 1 | 2 | 8 | 16 | 32});
}

DesignSpec random_design(std::mt19937_64& rng, int k, int n)
{
    std::vector<PointMask> all;
    for (PointMask p = 1; p < (PointMask{1} << k); ++p)
        all.push_back(p);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(n));
    return DesignSpec(k, all);
}

} // namespace

TEST_CASE("design validation")
{
    CHECK_THROWS_AS(DesignSpec(3, {1, 1}), DomainError);
    CHECK_THROWS_AS(DesignSpec(3, {0}), DomainError);
    CHECK_THROWS_AS(DesignSpec(3, {8}), DomainError);
    CHECK_THROWS_AS(DesignSpec(0, {}), DomainError);
    CHECK_THROWS_AS(DesignSpec(31, {1}), DomainError);
    CHECK(DesignSpec(3, {}).n() == 0);
    CHECK(DesignSpec(3, {7, 1, 4}).points() == std::vector<PointMask>{1, 4, 7});
}

TEST_CASE("weight distribution examples")
{
    const DesignSpec i1234(3, {4, 2, 1, 7});
    CHECK(weight_distribution(i1234).counts == std::vector<std::uint64_t>{1, 0, 6, 0, 1});
    CHECK(weight_distribution(DesignSpec(2, {2, 1, 3})).counts == std::vector<std::uint64_t>{1, 0, 3, 0});
    const DesignSpec full(4, {1, 2, 4, 8});
    CHECK(weight_distribution(full).counts == std::vector<std::uint64_t>{1, 4, 6, 4, 1});
}

TEST_CASE("wordlength pattern examples")
{
    const WordlengthPattern w = wordlength_pattern(DesignSpec(3, {4, 2, 1, 7}));
    CHECK(w.at(4) == 1);
    CHECK(w.total() == 1);
    CHECK(w.resolution() == 4);

    const WordlengthPattern r = wordlength_pattern(relation_1237_345678());
    CHECK(r.at(4) == 1);
    CHECK(r.at(6) == 2);
    CHECK(r.total() == 3);

    CHECK(wordlength_pattern(maximal_even(6)).at(4) == 1240);
    CHECK(wordlength_pattern(DesignSpec(5, {1, 2, 4, 8, 16})).total() == 0);
    CHECK_FALSE(resolution(DesignSpec(5, {1, 2, 4, 8, 16})).has_value());
}

TEST_CASE("resolution of the 2^(9-2) design with I = 123458 = 345679")
{
    // Basic factors 1..7 at bits 0..6; 8 = 12345, 9 = 34567.
    const DesignSpec d(7, {1, 2, 4, 8, 16, 32, 64, 0b0011111, 0b1111100});
    CHECK(resolution(d) == 6);
    CHECK(wordlength_pattern(d).at(6) == 3);
}

TEST_CASE("evenness")
{
    for (int k = 3; k <= 7; ++k) {
        CHECK(is_even(maximal_even(k)));
        std::vector<PointMask> all;
        for (PointMask p = 1; p < (PointMask{1} << k); ++p)
            all.push_back(p);
        CHECK_FALSE(is_even(DesignSpec(k, all)));
    }
    CHECK(is_even(relation_1237_345678()));
    CHECK_FALSE(is_even(DesignSpec(3, {1, 2, 3})));
}

TEST_CASE("maximal even design")
{
    const DesignSpec m3 = maximal_even(3);
    CHECK(m3.points() == std::vector<PointMask>{4, 5, 6, 7});
    CHECK(wordlength_pattern(m3).at(4) == 1);
    const DesignSpec m4 = maximal_even(4);
    CHECK(m4.n() == 8);
    CHECK(resolution(m4) == 4);
    CHECK(maximal_even(6).n() == 32);
}

TEST_CASE("canonicalizing an even design keeps its pattern and moves it to the top half")
{
    const DesignSpec d = relation_1237_345678();
    CHECK_FALSE(d.in_top_half());
    const DesignSpec c = canonicalize_even(d);
    CHECK(c.in_top_half());
    CHECK(wordlength_pattern(c) == wordlength_pattern(d));
    CHECK_THROWS_AS(canonicalize_even(DesignSpec(3, {1, 2, 3})), DomainError);
}

TEST_CASE("complement in the maximal even design")
{
    CHECK(complement_in_maximal_even(maximal_even(5)).T_tilde.empty());

    const DesignSpec small = canonicalize_even(relation_1237_345678());
    const DesignSpec big = design_from_complement(6, small);
    CHECK(big.n() == 24);
    const EvenPartition p = complement_in_maximal_even(big);
    CHECK(p.complement() == small);
    CHECK(p.F.size() == 31);
    CHECK(design_from_complement(6, p.complement()) == big);

    std::vector<PointMask> fourteen;
    for (PointMask q = 16; q < 30; ++q)
        fourteen.push_back(q);
    CHECK(complement_in_maximal_even(DesignSpec(5, fourteen)).T_tilde.size() == 2);
}

TEST_CASE("macwilliams route agrees with brute force on random designs")
{
    std::mt19937_64 rng(101);
    for (int t = 0; t < 200; ++t) {
        const int k = 3 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % std::min(14, (1 << k) - 1));
        const DesignSpec d = random_design(rng, k, n);
        const WordlengthPattern fast = wordlength_pattern(d);
        CHECK(fast == defining_words_bruteforce(d));
        const auto direct = oracle::zero_sum_subsets(d.points());
        for (int i = 1; i <= n; ++i)
            CHECK(fast.at(i) == direct[static_cast<std::size_t>(i)]);
        const auto wd = weight_distribution(d);
        const auto ow = oracle::code_weights(k, d.points());
        for (int j = 0; j <= n; ++j)
            CHECK(static_cast<std::int64_t>(wd.counts[static_cast<std::size_t>(j)]) == ow[static_cast<std::size_t>(j)]);
        CHECK(wd.dimension() == d.rank());
    }
}

TEST_CASE("pattern is invariant under invertible relabelling")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const DesignSpec d = random_design(rng, 5, 12);
        Gf2Matrix g;
        do {
            std::vector<std::uint64_t> rows(5);
            for (auto& x : rows)
                x = rng() & 31;
            g = Gf2Matrix(rows, 5);
        } while (rank(g) < 5);
        CHECK(wordlength_pattern(apply_basis_change(d, g)) == wordlength_pattern(d));
    }
}

TEST_CASE("split pattern by hand at k=3")
{
    // T = {100, 101, 110}, blocks generated by 001 and 010.
    const BlockedPartition p = make_blocked_partition(3, {4, 5, 6}, {1, 2});
    CHECK(p.residual.size() == 1);
    const SplitWordlengthPattern s = split_wordlength_bruteforce(p);
    CHECK(s.at1(2) == 3);
    CHECK(s.at0(3) == 0);
}

TEST_CASE("split oracle matches the direct subset scan")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        const int k = 4;
        const int r = 1 + static_cast<int>(rng() % 3);
        const auto gens = hyperplane_generators(r + 1);
        std::vector<PointMask> pool;
        for (PointMask p = PointMask{1} << r; p < 16; ++p)
            pool.push_back(p);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(1 + rng() % pool.size());
        const BlockedPartition part = make_blocked_partition(k, pool, gens);
        const SplitWordlengthPattern s = split_wordlength_bruteforce(part);
        const auto o = oracle::split_words(k, part.treatment, gens);
        for (int i = 1; i <= static_cast<int>(pool.size()); ++i) {
            CHECK(s.at0(i) == o.a0[static_cast<std::size_t>(i)]);
            CHECK(s.at1(i) == o.a1[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("maximal even treatment with the hyperplane as blocks")
{
    for (int k = 3; k <= 5; ++k) {
        const DesignSpec m = maximal_even(k);
        const BlockedPartition p = make_blocked_partition(k, m.points(), hyperplane_generators(k));
        CHECK(p.residual.empty());
        const SplitWordlengthPattern s = split_wordlength_bruteforce(p);
        const WordlengthPattern w = wordlength_pattern(m);
        for (int i = 1; i <= m.n(); ++i)
            CHECK(s.at0(i) == w.at(i));
    }
}

TEST_CASE("hyperplane closure on the residual side")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        std::vector<PointMask> top;
        for (PointMask p = 8; p < 16; ++p)
            top.push_back(p);
        std::shuffle(top.begin(), top.end(), rng);
        top.resize(1 + rng() % 7);
        const EvenPartition part = complement_in_maximal_even(DesignSpec(4, top));
        const SplitWordlengthPattern s = split_wordlength_bruteforce(part, PartitionSide::complement);
        const int nt = static_cast<int>(part.T_tilde.size());
        for (int i = 1; i <= nt; ++i) {
            if (i % 2 == 0)
                CHECK(s.at1(i) == oracle::choose(nt, i) - s.at0(i));
            else
                CHECK(s.at1(i) == 0);
        }
    }
}

TEST_CASE("blocked partition validation")
{
    CHECK_THROWS_AS(make_blocked_partition(3, {4, 5}, {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(make_blocked_partition(3, {1, 5}, {1}), DomainError);
    CHECK_THROWS_AS(make_blocked_partition(3, {4}, {1, 2, 4}), DomainError);
}

TEST_CASE("enumeration budget")
{
    CHECK_THROWS_AS(weight_distribution(maximal_even(6), 4), ResourceError);
    CHECK_THROWS_AS(defining_words_bruteforce(maximal_even(6), 10), ResourceError);
}
