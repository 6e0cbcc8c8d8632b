#include <doctest.h>

#include <random>

#include "evendesign/errors.hpp"
#include "evendesign/gf2.hpp"

using namespace evendesign;

TEST_CASE("rank of small matrices")
{
    CHECK(rank(Gf2Matrix({0b100, 0b010, 0b001}, 3)) == 3);
    CHECK(rank(Gf2Matrix({0b110, 0b011, 0b101}, 3)) == 2);
    const std::vector<std::uint32_t> cols = {0b100, 0b101, 0b110, 0b001, 0b010, 0b011};
    CHECK(rank(Gf2Matrix::from_columns(cols, 3)) == 3);
    CHECK(rank_of_points(cols) == 3);
    CHECK(rank(Gf2Matrix({0, 0}, 4)) == 0);
}

TEST_CASE("nullspace of the all-ones row")
{
    const auto basis = nullspace_basis(Gf2Matrix({0b1111}, 4));
    REQUIRE(basis.size() == 3);
    for (auto v : basis)
        CHECK(parity(v & 0b1111) == 0);
    CHECK(rank_of_points(std::vector<std::uint32_t>(basis.begin(), basis.end())) == 3);
}

TEST_CASE("nullspace of a full-rank square matrix is empty")
{
    CHECK(nullspace_basis(Gf2Matrix::identity(5)).empty());
}

TEST_CASE("nullspace of two 9-letter words")
{
    // 123458 and 345679, letter j at bit j-1.
    const std::uint64_t w1 = 0b010011111, w2 = 0b101111100;
    const Gf2Matrix m({w1, w2}, 9);
    const auto basis = nullspace_basis(m);
    REQUIRE(basis.size() == 7);
    for (auto v : basis) {
        CHECK(parity(v & w1) == 0);
        CHECK(parity(v & w2) == 0);
        CHECK(m.apply(v) == 0);
    }
}

TEST_CASE("rank plus nullity equals columns on random matrices")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        const int r = 1 + static_cast<int>(rng() % 8);
        const int c = 1 + static_cast<int>(rng() % 20);
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(r));
        for (auto& x : rows)
            x = rng() & ((std::uint64_t{1} << c) - 1);
        const Gf2Matrix m(rows, c);
        const auto basis = nullspace_basis(m);
        CHECK(rank(m) + static_cast<int>(basis.size()) == c);
        for (auto v : basis)
            CHECK(m.apply(v) == 0);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("inverse round trip")
{
    std::mt19937_64 rng(11);
    int tested = 0;
    while (tested < 50) {
        std::vector<std::uint64_t> rows(6);
        for (auto& x : rows)
            x = rng() & 0x3F;
        const Gf2Matrix m(rows, 6);
        if (rank(m) < 6) {
            CHECK_THROWS_AS(inverse(m), DomainError);
            continue;
        }
        const Gf2Matrix inv = inverse(m);
        for (std::uint64_t v = 0; v < 64; ++v)
            CHECK(m.apply(inv.apply(v)) == v);
        ++tested;
    }
}

TEST_CASE("span basis spans the same space")
{
    const std::vector<std::uint32_t> pts = {3, 5, 6, 9, 12, 15};
    const auto basis = span_basis(pts);
    CHECK(static_cast<int>(basis.size()) == rank_of_points(pts));
    std::vector<std::uint32_t> both = basis;
    both.insert(both.end(), pts.begin(), pts.end());
    CHECK(rank_of_points(both) == static_cast<int>(basis.size()));
}

TEST_CASE("GF(8) multiplication by hand")
{
    CHECK(primitive_polynomial(3) == 0b1011);
    const FieldElement x = ff_element(0b010, 3), x2 = ff_element(0b100, 3);
    CHECK(ff_mul(x, x2).value == 0b011);
    for (std::uint32_t a = 0; a < 8; ++a) {
        CHECK(ff_mul(ff_element(a, 3), ff_element(1, 3)).value == a);
        CHECK(ff_mul(ff_element(0, 3), ff_element(a, 3)).value == 0);
    }
    CHECK(ff_element_order(ff_element(1, 3)) == 1);
    CHECK(ff_element_order(ff_generator(3)) == 7);
    CHECK_THROWS_AS(ff_element_order(ff_element(0, 3)), DomainError);
    CHECK_THROWS_AS(ff_element(8, 3), DomainError);
}

TEST_CASE("generators are primitive and circle elements have order 2^s + 1")
{
    for (int d = kMinFieldDegree; d <= kMaxFieldDegree; ++d)
        CHECK(ff_element_order(ff_generator(d)) == (std::uint64_t{1} << d) - 1);
    for (int s = 1; 2 * s <= kMaxFieldDegree; ++s) {
        if (2 * s < kMinFieldDegree)
            continue;
        const FieldElement beta = ff_pow(ff_generator(2 * s), (std::uint64_t{1} << s) - 1);
        CHECK(ff_element_order(beta) == (std::uint64_t{1} << s) + 1);
    }
}

TEST_CASE("field arithmetic is a commutative ring on random triples")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        const int d = 2 + static_cast<int>(rng() % 11);
        const auto mask = (1U << d) - 1;
        const FieldElement a = ff_element(static_cast<std::uint32_t>(rng()) & mask, d);
        const FieldElement b = ff_element(static_cast<std::uint32_t>(rng()) & mask, d);
        const FieldElement c = ff_element(static_cast<std::uint32_t>(rng()) & mask, d);
        CHECK(ff_mul(a, b) == ff_mul(b, a));
        CHECK(ff_mul(a, ff_add(b, c)) == ff_add(ff_mul(a, b), ff_mul(a, c)));
        CHECK(ff_mul(ff_mul(a, b), c) == ff_mul(a, ff_mul(b, c)));
    }
}

TEST_CASE("unsupported field degree")
{
    CHECK_THROWS_AS(primitive_polynomial(1), ConfigError);
    CHECK_THROWS_AS(primitive_polynomial(13), ConfigError);
}
