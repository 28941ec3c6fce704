#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace endsbench;

namespace {

FpMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int p)
{
    std::uniform_int_distribution<int> d(0, p - 1);
    FpMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
    return m;
}

} // namespace

TEST_CASE("field arithmetic")
{
    for (int p : {2, 3, 5, 7, 251})
        for (int a = 1; a < std::min(p, 40); ++a) CHECK(a * mod_inverse(a, p) % p == 1);
    CHECK(mod_reduce(-1, 3) == 2);
    CHECK(mod_reduce(-7, 5) == 3);
    CHECK_THROWS_AS(FpMatrix(2, 2, 1), SpecError);
}

TEST_CASE("rank agrees with the independent-subset oracle")
{
    std::mt19937 rng(7);
    for (int p : {2, 3, 5})
        for (int trial = 0; trial < 60; ++trial) {
            std::uniform_int_distribution<int> sz(1, 6);
            const auto m = random_matrix(rng, static_cast<std::size_t>(sz(rng)), static_cast<std::size_t>(sz(rng)), p);
            if (p == 5 && m.rows() > 4) continue;
            CHECK(rank(m) == oracle::rank_by_subsets(m));
        }
}

TEST_CASE("rank of identity and of a rank-deficient matrix")
{
    CHECK(rank(FpMatrix::identity(5, 3)) == 5);
    // third row is the sum of the first two mod 3
    const auto m = FpMatrix::from_rows({{1, 2, 0}, {0, 1, 1}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    CHECK(rank(FpMatrix::from_rows({{2, 4}, {1, 2}}, 7)) == 1);
}

TEST_CASE("rank profile: rank-nullity and kernel vectors")
{
    std::mt19937 rng(11);
    for (int p : {2, 3})
        for (int trial = 0; trial < 40; ++trial) {
            const auto m = random_matrix(rng, 5, 7, p);
            const auto prof = rank_profile(m);
            CHECK(prof.rank + prof.nullspace.dim() == m.cols());
            CHECK(prof.row_space.dim() == prof.rank);
            for (std::size_t i = 0; i < prof.nullspace.dim(); ++i) {
                const auto img = m.apply(prof.nullspace.basis().row(i));
                CHECK(std::all_of(img.begin(), img.end(), [](auto x) { return x == 0; }));
            }
        }
}

TEST_CASE("matrix products and transpose")
{
    const auto a = FpMatrix::from_rows({{1, 2}, {0, 1}}, 3);
    const auto b = FpMatrix::from_rows({{1, 1}, {1, 0}}, 3);
    CHECK(a * b == FpMatrix::from_rows({{0, 1}, {1, 0}}, 3));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(a * FpMatrix(3, 1, 3), DimensionMismatch);
}

TEST_CASE("solve finds a solution or reports inconsistency")
{
    const auto m = FpMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}, 2);
    const FpVector rhs{1, 0};
    const auto x = solve(m, rhs);
    REQUIRE(x);
    CHECK(m.apply(*x) == rhs);

    const auto singular = FpMatrix::from_rows({{1, 1}, {1, 1}}, 2);
    CHECK_FALSE(solve(singular, FpVector{1, 0}));
    CHECK_THROWS_AS(solve(singular, FpVector{1}), DimensionMismatch);
}

TEST_CASE("subspaces are canonical")
{
    const auto s1 = Subspace::span(FpMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}, 2));
    const auto s2 = Subspace::span(FpMatrix::from_rows({{1, 0, 1}, {1, 1, 0}, {0, 1, 1}}, 2));
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains(FpVector{1, 0, 1}));
    CHECK_FALSE(s1.contains(FpVector{1, 0, 0}));

    Subspace grow(3, 2);
    CHECK(grow.insert(FpVector{1, 1, 0}));
    CHECK(grow.insert(FpVector{0, 1, 1}));
    CHECK_FALSE(grow.insert(FpVector{1, 0, 1}));
    CHECK(grow == s1);
    CHECK(Subspace::full(3, 2).contains(s1));
}

TEST_CASE("quotient dimension")
{
    const auto full = Subspace::full(4, 3);
    const auto sub = Subspace::span(FpMatrix::from_rows({{1, 2, 0, 0}}, 3));
    CHECK(quotient_dim(full, sub) == 3);
    CHECK_THROWS_AS(quotient_dim(sub, full), NotASubspace);
}
