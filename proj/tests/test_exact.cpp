#include <catch2/catch_amalgamated.hpp>

#include "toricube/exact.hpp"

#include <cstdint>
#include <random>

using namespace toricube;

TEST_CASE("primitive divides out the gcd and keeps direction") {
    CHECK(primitive(IntVec{2, 4, 6}) == IntVec{1, 2, 3});
    CHECK(primitive(IntVec{1, 0, 1}) == IntVec{1, 0, 1});
    CHECK(primitive(IntVec{0, -4, 2}) == IntVec{0, -2, 1});
}

TEST_CASE("primitive rejects the zero vector") {
    CHECK_THROWS_WITH(primitive(IntVec{0, 0}), "zero vector has no primitive form");
}

TEST_CASE("primitive is idempotent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        IntVec v(4);
        bool zero = true;
        for (int i = 0; i < 4; ++i) {
            v[i] = static_cast<std::int64_t>(rng() % 21) - 10;
            if (v[i] != 0) zero = false;
        }
        if (zero) v[0] = 3;
        CHECK(primitive(primitive(v)) == primitive(v));
    }
}

TEST_CASE("rank on known matrices") {
    RatMatrix m(3, 3);
    const int rows[3][3] = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
    CHECK(rank(m) == 3);

    RatMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
    CHECK(rank(id) == 4);

    CHECK(rank(RatMatrix(3, 5)) == 0);
    CHECK(rank(RatMatrix(0, 0)) == 0);
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        RatMatrix m(r, c), t(c, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                const Rat v(static_cast<std::int64_t>(rng() % 7) - 3, 1 + static_cast<std::int64_t>(rng() % 3));
                m.at(i, j) = v;
                t.at(j, i) = v;
            }
        CHECK(rank(m) == rank(t));
    }
}

TEST_CASE("solve finds exact solutions and flags inconsistency") {
    RatMatrix m(2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    m.at(1, 0) = 1; m.at(1, 1) = -1;
    auto x = solve(m, {Rat(2), Rat(0)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);

    RatMatrix z(1, 1);
    z.at(0, 0) = 0;
    CHECK_FALSE(solve(z, {Rat(1)}));

    RatMatrix u(2, 3);
    u.at(0, 0) = 1; u.at(0, 1) = 1; u.at(0, 2) = 0;
    u.at(1, 0) = 0; u.at(1, 1) = 1; u.at(1, 2) = 1;
    auto y = solve(u, {Rat(1), Rat(1)});
    REQUIRE(y);
    CHECK((*y)[0] + (*y)[1] == 1);
    CHECK((*y)[1] + (*y)[2] == 1);

    CHECK_THROWS_AS(solve(u, {Rat(1)}), std::invalid_argument);
}

TEST_CASE("every returned solution satisfies M x = b exactly") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<std::int64_t>(rng() % 5) - 2;
        std::vector<Rat> b(r);
        for (std::size_t i = 0; i < r; ++i) b[i] = static_cast<std::int64_t>(rng() % 5) - 2;
        auto x = solve(m, b);
        if (!x) continue;
        for (std::size_t i = 0; i < r; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * (*x)[j];
            CHECK(s == b[i]);
        }
    }
}

TEST_CASE("kernel basis spans the kernel") {
    std::vector<IntVec> rows{IntVec{1, 1, 0}, IntVec{0, 1, 1}};
    auto basis = kernel_basis(rows, 3);
    REQUIRE(basis.size() == 1);
    for (const auto& r : rows) CHECK(dot(r, basis[0]) == 0);
}
