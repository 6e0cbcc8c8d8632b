#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"
#include "evendesign/search.hpp"
#include "evendesign/verify.hpp"
#include "oracles.hpp"

using namespace evendesign;

namespace {

// Minimum A_4 over every n_tilde-subset of the top half with maximum rank, no search machinery.
std::int64_t brute_min_a4(int k, int nt)
{
    std::int64_t best = -1;
    for_each_subset(maximal_even(k).points(), nt, [&](const std::vector<PointMask>& s) {
        if (rank_of_points(s) != std::min(nt, k))
            return;
        const auto z = oracle::zero_sum_subsets(s);
        const std::int64_t a4 = nt >= 4 ? z[4] : 0;
        if (best < 0 || a4 < best)
            best = a4;
    });
    return best;
}

SearchOptions with(Symmetry s, int threads = 1)
{
    SearchOptions o;
    o.symmetry = s;
    o.threads = threads;
    return o;
}

} // namespace

TEST_CASE("pair-sum quadruple count matches the direct scans")
{
    std::mt19937_64 rng(97);
    for (int t = 0; t < 500; ++t) {
        std::vector<PointMask> v;
        for (PointMask x = 0; x < 64; ++x)
            if (rng() % 4 == 0)
                v.push_back(x);
        std::shuffle(v.begin(), v.end(), rng);
        const auto expected = oracle::zero_sum_quadruples(v);
        CHECK(static_cast<std::int64_t>(count_dependent_quadruples(v)) == expected);
        CHECK(static_cast<std::int64_t>(count_dependent_quadruples_direct(v)) == expected);
    }
}

TEST_CASE("affine rank")
{
    CHECK(affine_rank({}) == -1);
    CHECK(affine_rank({5}) == 0);
    CHECK(affine_rank({0, 1, 2, 3}) == 2);
    CHECK(affine_rank({1, 2, 4, 8}) == 3);
}

TEST_CASE("64-run minima for n = 21..24")
{
    const int expected[] = {204, 250, 304, 365};
    for (int n = 21; n <= 24; ++n) {
        const SearchReport r = min_a4(6, 32 - n);
        CHECK(r.exhaustive);
        CHECK(r.full_wlp.at(4) == expected[n - 21]);
    }
    CHECK(min_a4(6, 8).min_a4_tilde == 1);
}

TEST_CASE("report invariants")
{
    for (int nt = 0; nt <= 12; ++nt) {
        const SearchReport r = min_a4(6, nt);
        CHECK(r.witness.n() == nt);
        CHECK(r.witness.in_top_half());
        CHECK(r.witness.rank() == std::min(nt, 6));
        CHECK(wordlength_pattern(r.witness).at(4) == r.min_a4_tilde);
        if (32 - nt >= 4)
            CHECK(Rational(BigInt(r.full_wlp.at(4) - r.min_a4_tilde)) == a4_offset(32 - nt, 6));
    }
}

TEST_CASE("Sidon sizes give zero at odd k")
{
    for (int k : {5, 7})
        for (int nt = 0; nt <= (1 << ((k - 1) / 2)) + 1; ++nt)
            CHECK(min_a4(k, nt).min_a4_tilde == 0);
}

TEST_CASE("symmetry modes agree with unreduced enumeration for k <= 5")
{
    for (int k : {3, 4, 5}) {
        const int half = 1 << (k - 1);
        for (int nt = 0; nt <= half; ++nt) {
            const std::int64_t truth = brute_min_a4(k, nt);
            for (Symmetry s : {Symmetry::none, Symmetry::translation, Symmetry::frame}) {
                const SearchReport r = min_a4(k, nt, with(s));
                CHECK(r.exhaustive);
                CHECK(static_cast<std::int64_t>(r.min_a4_tilde) == truth);
            }
        }
    }
}

TEST_CASE("thread count does not change the result")
{
    for (int nt : {9, 10, 11}) {
        const SearchReport one = min_a4(6, nt, with(Symmetry::frame, 1));
        const SearchReport four = min_a4(6, nt, with(Symmetry::frame, 4));
        CHECK(one.min_a4_tilde == four.min_a4_tilde);
        CHECK(one.witness == four.witness);
    }
}

TEST_CASE("budget exhaustion is reported, never silently wrong")
{
    SearchOptions o;
    o.node_budget = 50;
    o.threads = 1;
    const SearchReport r = min_a4(7, 13, o);
    CHECK_FALSE(r.exhaustive);
    CHECK(wordlength_pattern(r.witness).at(4) == r.min_a4_tilde);
    CHECK(r.min_a4_tilde >= min_a4(7, 13).min_a4_tilde);
}

TEST_CASE("checkpoint resume reproduces the answer")
{
    const std::string path = "search_test_checkpoint.txt";
    std::remove(path.c_str());
    SearchOptions o;
    o.threads = 1;
    o.symmetry = Symmetry::translation;
    o.checkpoint_path = path;
    const SearchReport first = min_a4(5, 7, o);
    CHECK(first.branches_resumed == 0);
    const SearchReport again = min_a4(5, 7, o);
    CHECK(again.branches_resumed == again.branches_total);
    CHECK(again.min_a4_tilde == first.min_a4_tilde);
    CHECK(again.witness == first.witness);

    SearchOptions other = o;
    other.symmetry = Symmetry::none;
    CHECK_THROWS_AS(min_a4(5, 7, other), ConfigError);

    {
        std::ofstream out(path);
        out << "# evendesign-checkpoint v1 k=5 n_tilde=7 symmetry=translation objective=a4\nbranch 0 0 0 1 2 3 4 5 6\n";
    }
    CHECK_THROWS_AS(min_a4(5, 7, o), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("minimum aberration search")
{
    const SearchReport r24 = ma_search(6, 24);
    CHECK(r24.full_wlp.at(4) == 365);
    CHECK(r24.full_wlp == wordlength_pattern(design_from_complement(6, complement_construction(6, 8))));

    const SearchReport r12 = ma_search(5, 12);
    CHECK(r12.full_wlp.at(4) == 38);
    CHECK(r12.tilde_wlp.total() == 0);

    const SearchReport r31 = ma_search(6, 31);
    CHECK(Rational(r31.full_wlp.at(4)) == a4_offset(31, 6));

    CHECK_THROWS_AS(ma_search(6, 20), DomainError);
    CHECK_THROWS_AS(ma_search(6, 32), DomainError);
}

TEST_CASE("minimum aberration agrees with brute force at k=5")
{
    for (int n = 11; n <= 15; ++n) {
        WordlengthPattern best;
        bool have = false;
        for_each_subset(maximal_even(5).points(), 16 - n, [&](const std::vector<PointMask>& s) {
            const WordlengthPattern w = wordlength_pattern(DesignSpec(5, s));
            if (!have || compare_aberration(w, best) < 0) {
                best = w;
                have = true;
            }
        });
        CHECK(ma_search(5, n).tilde_wlp == best);
    }
}

TEST_CASE("search argument checks")
{
    CHECK_THROWS_AS(min_a4(2, 1), DomainError);
    CHECK_THROWS_AS(min_a4(11, 1), DomainError);
    CHECK_THROWS_AS(min_a4(5, 17), DomainError);
    CHECK_THROWS_AS(parse_symmetry("rotation"), ConfigError);
    CHECK(parse_symmetry("frame") == Symmetry::frame);
}

TEST_CASE("frame and translation reductions agree at k=6")
{
    for (int nt = 5; nt <= 11; ++nt) {
        const SearchReport f = min_a4(6, nt, with(Symmetry::frame));
        const SearchReport t = min_a4(6, nt, with(Symmetry::translation));
        CHECK(f.exhaustive);
        CHECK(t.exhaustive);
        CHECK(f.min_a4_tilde == t.min_a4_tilde);
    }
}
