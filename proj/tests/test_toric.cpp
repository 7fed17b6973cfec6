#include <catch2/catch_amalgamated.hpp>

#include "toricube/toric.hpp"

#include <cstdint>
#include <random>

using namespace toricube;

namespace {

// f(x,y,z) = (xy, yz, xz)
MonomialMap map_xy_yz_xz() {
    return MonomialMap(3, 3, {IntVec{1, 1, 0}, IntVec{0, 1, 1}, IntVec{1, 0, 1}});
}

// bd <= ac  and  ad <= bc  on [0,1]^4
BinomialSystem precube_4d() {
    return BinomialSystem(4, {BinomialInequality(IntVec{0, 1, 0, 1}, IntVec{1, 0, 1, 0}),
                              BinomialInequality(IntVec{1, 0, 0, 1}, IntVec{0, 1, 1, 0})});
}

// a >= bc, b >= ac, c >= ab
BinomialSystem cube_3d_system() {
    return BinomialSystem(3, {BinomialInequality(IntVec{0, 1, 1}, IntVec{1, 0, 0}),
                              BinomialInequality(IntVec{1, 0, 1}, IntVec{0, 1, 0}),
                              BinomialInequality(IntVec{1, 1, 0}, IntVec{0, 0, 1})});
}

MonomialMap random_map(std::mt19937_64& rng, int max_n = 4, int max_d = 4, int max_entry = 2) {
    const int n = 1 + static_cast<int>(rng() % max_n);
    const int d = 1 + static_cast<int>(rng() % max_d);
    std::vector<IntVec> rows;
    for (int j = 0; j < n; ++j) {
        IntVec r(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) r[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(rng() % (max_entry + 1));
        rows.push_back(std::move(r));
    }
    return MonomialMap(n, d, std::move(rows));
}

std::vector<int> make_support(const std::vector<Rat>& x) {
    std::vector<int> s;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) s.push_back(static_cast<int>(i));
    return s;
}

}  // namespace

TEST_CASE("log_cone_of_map") {
    CHECK(cone_equal(log_cone_of_map(map_xy_yz_xz()),
                     Cone::from_rays(3, {IntVec{1, 0, 1}, IntVec{1, 1, 0}, IntVec{0, 1, 1}})));
    MonomialMap ident(2, 2, {IntVec{1, 0}, IntVec{0, 1}});
    CHECK(cone_equal(log_cone_of_map(ident), Cone::orthant(2)));
    MonomialMap m(2, 2, {IntVec{1, 0}, IntVec{2, 1}});
    CHECK(cone_equal(log_cone_of_map(m), Cone::from_rays(2, {IntVec{1, 2}, IntVec{0, 1}})));
}

TEST_CASE("cone_of_system") {
    auto c = cone_of_system(precube_4d());
    std::vector<IntVec> h;
    for (int i = 0; i < 4; ++i) {
        IntVec e(4);
        e[i] = 1;
        h.push_back(e);
    }
    h.push_back(IntVec{-1, 1, -1, 1});
    h.push_back(IntVec{1, -1, -1, 1});
    CHECK(cone_equal(c, Cone::from_ineqs(4, h)));

    CHECK(cone_equal(cone_of_system(BinomialSystem(2)), Cone::orthant(2)));

    // ab <= c and c <= ab pin the plane y1 + y2 = y3 inside the orthant
    BinomialSystem eq(3, {BinomialInequality(IntVec{1, 1, 0}, IntVec{0, 0, 1}),
                          BinomialInequality(IntVec{0, 0, 1}, IntVec{1, 1, 0})});
    CHECK(cone_equal(cone_of_system(eq),
                     Cone::from_rays(3, {IntVec{1, 0, 1}, IntVec{0, 1, 1}})));
}

TEST_CASE("strata") {
    auto cube = ToricCube::from_system(precube_4d());
    auto st = strata(cube);
    REQUIRE(st.size() == 16);
    for (const auto& s : st) {
        if (s.support == std::vector<int>{2, 3}) {
            CHECK(s.present);
            REQUIRE(s.cone);
            CHECK(cone_equal(*s.cone, Cone::from_rays(2, {IntVec{0, 1}, IntVec{1, 1}})));
        }
        if (s.support == std::vector<int>{0, 1, 2, 3}) {
            CHECK(s.present);
            CHECK(cone_equal(*s.cone, cube.log_cone()));
        }
    }
    auto st2 = strata(ToricCube::from_map(map_xy_yz_xz()));
    for (const auto& s : st2)
        if (s.support == std::vector<int>{0, 1}) CHECK_FALSE(s.present);
}

TEST_CASE("cubify adds the missing face constraint to the 4d precube") {
    auto out = cubify(precube_4d());
    BinomialSystem expected = precube_4d();
    expected.ineqs.emplace_back(IntVec{0, 0, 0, 1}, IntVec{0, 0, 1, 0});  // d <= c
    CHECK(system_equiv(out, expected));
    CHECK_FALSE(system_equiv(precube_4d(), out));
}

TEST_CASE("cubify on a precube with two absent coordinate strata") {
    // bc <= a^2 and ac <= b^2
    BinomialSystem s(3, {BinomialInequality(IntVec{0, 1, 1}, IntVec{2, 0, 0}),
                         BinomialInequality(IntVec{1, 0, 1}, IntVec{0, 2, 0})});
    BinomialSystem expected = s;
    expected.ineqs.emplace_back(IntVec{0, 0, 1}, IntVec{1, 0, 0});  // c <= a
    expected.ineqs.emplace_back(IntVec{0, 0, 1}, IntVec{0, 1, 0});  // c <= b
    CHECK(system_equiv(cubify(s), expected));
}

TEST_CASE("cubify is the identity on an honest cube") {
    CHECK(system_equiv(cubify(cube_3d_system()), cube_3d_system()));
}

TEST_CASE("implicitize") {
    CHECK(system_equiv(implicitize(map_xy_yz_xz()), cube_3d_system()));

    MonomialMap ident(2, 2, {IntVec{1, 0}, IntVec{0, 1}});
    CHECK(system_equiv(implicitize(ident), BinomialSystem(2)));

    MonomialMap m(2, 2, {IntVec{1, 0}, IntVec{1, 2}});  // (x, xy^2)
    BinomialSystem expected(2, {BinomialInequality(IntVec{0, 1}, IntVec{1, 0})});
    CHECK(system_equiv(implicitize(m), expected));
}

TEST_CASE("parametrize") {
    auto m = parametrize(cubify(precube_4d()));
    CHECK(m.n == 4);
    CHECK(m.d == 5);
    std::vector<IntVec> cols;
    for (int k = 0; k < m.d; ++k) cols.push_back(m.column(k));
    std::sort(cols.begin(), cols.end());
    CHECK(cols == std::vector<IntVec>{IntVec{0, 0, 0, 1}, IntVec{0, 0, 1, 1}, IntVec{0, 1, 0, 1},
                                      IntVec{1, 0, 0, 1}, IntVec{1, 1, 0, 0}});

    auto ident = parametrize(BinomialSystem(1));
    CHECK(ident.n == 1);
    CHECK(ident.d == 1);
    CHECK(ident.rows[0] == IntVec{1});

    auto p = parametrize(cube_3d_system());
    CHECK(p.d == 3);
    std::vector<IntVec> pc;
    for (int k = 0; k < p.d; ++k) pc.push_back(p.column(k));
    std::sort(pc.begin(), pc.end());
    CHECK(pc == std::vector<IntVec>{IntVec{0, 1, 1}, IntVec{1, 0, 1}, IntVec{1, 1, 0}});
}

TEST_CASE("member") {
    CHECK(member({Rat(1), Rat(1), Rat(1), Rat(1)}, cubify(precube_4d())));
    CHECK(member({Rat(0), Rat(0), Rat(1), Rat(1)}, cubify(precube_4d())));
    CHECK_FALSE(member({Rat(0), Rat(0), Rat(1, 2), Rat(1)}, cubify(precube_4d())));
    CHECK(member({Rat(1, 2), Rat(1, 2), Rat(1, 4)}, cube_3d_system()));
    CHECK_THROWS_AS(member({Rat(2), Rat(0), Rat(0)}, cube_3d_system()), std::invalid_argument);
}

TEST_CASE("stratum_restriction") {
    auto full = stratum_restriction(precube_4d(), {2, 3});
    REQUIRE(full);
    CHECK(cone_equal(*full, Cone::orthant(2)));  // both inequalities drop

    auto cubed = stratum_restriction(cubify(precube_4d()), {2, 3});
    REQUIRE(cubed);
    CHECK(cone_equal(*cubed, Cone::from_rays(2, {IntVec{0, 1}, IntVec{1, 1}})));

    BinomialSystem s(3, {BinomialInequality(IntVec{0, 1, 1}, IntVec{1, 0, 0})});  // bc <= a
    CHECK_FALSE(stratum_restriction(s, {1, 2}));
}

TEST_CASE("system_equiv") {
    BinomialSystem a(2, {BinomialInequality(IntVec{0, 1}, IntVec{1, 0})});   // d <= c
    BinomialSystem b(2, {BinomialInequality(IntVec{0, 2}, IntVec{2, 0})});   // d^2 <= c^2
    CHECK(system_equiv(a, b));
    CHECK_FALSE(system_equiv(precube_4d(), cubify(precube_4d())));
    BinomialSystem perm(4, {precube_4d().ineqs[1], precube_4d().ineqs[0]});
    CHECK(system_equiv(precube_4d(), perm));
    CHECK_THROWS_AS(system_equiv(a, BinomialSystem(3)), std::invalid_argument);
}

TEST_CASE("is_cube") {
    CHECK_FALSE(is_cube(precube_4d()));
    CHECK(is_cube(BinomialSystem(2)));
    CHECK(is_cube(cube_3d_system()));
}

TEST_CASE("intersect_interiors") {
    auto c1 = ToricCube::from_map(MonomialMap(2, 2, {IntVec{1, 0}, IntVec{2, 1}}));  // (x, x^2 y)
    auto c2 = ToricCube::from_map(MonomialMap(2, 2, {IntVec{1, 0}, IntVec{1, 2}}));  // (x, x y^2)
    auto both = intersect_interiors(c1, c2);
    REQUIRE(both);
    CHECK(cone_equal(both->log_cone(), c1.log_cone()));

    auto same = intersect_interiors(c1, c1);
    REQUIRE(same);
    CHECK(cone_equal(same->log_cone(), c1.log_cone()));

    auto r1 = ToricCube(2, Cone::from_rays(2, {IntVec{1, 2}}));
    auto r2 = ToricCube(2, Cone::from_rays(2, {IntVec{1, 3}}));
    CHECK_FALSE(intersect_interiors(r1, r2));
}

TEST_CASE("implicitize is sound on grid images") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        MonomialMap m = random_map(rng);
        BinomialSystem s = implicitize(m);
        const int res = 3;
        std::vector<int> idx(static_cast<std::size_t>(m.d), 0);
        while (true) {
            std::vector<Rat> t(static_cast<std::size_t>(m.d));
            for (int k = 0; k < m.d; ++k) t[static_cast<std::size_t>(k)] = Rat(idx[static_cast<std::size_t>(k)], res);
            CHECK(member(m.eval(t), s));
            int k = 0;
            while (k < m.d && idx[static_cast<std::size_t>(k)] == res) {
                idx[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == m.d) break;
            ++idx[static_cast<std::size_t>(k)];
        }
    }
}

TEST_CASE("round trip: parametrize recovers the system cone") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        MonomialMap m = random_map(rng);
        BinomialSystem s = implicitize(m);
        CHECK(cone_equal(log_cone_of_map(parametrize(s)), cone_of_system(s)));
        CHECK(cone_equal(log_cone_of_map(parametrize(s)), log_cone_of_map(m)));
    }
}

TEST_CASE("cubify is idempotent up to equivalence and valid on the cone") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        BinomialSystem s(n);
        const int count = static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) {
            IntVec u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                u[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rng() % 3);
                v[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rng() % 3);
            }
            s.ineqs.emplace_back(std::move(u), std::move(v));
        }
        BinomialSystem c = cubify(s);
        CHECK(system_equiv(c, cubify(c)));
        const Cone d = cone_of_system(s);
        for (const auto& q : c.ineqs)
            for (const auto& r : d.rays()) CHECK(dot(q.u - q.v, r) >= 0);
    }
}

TEST_CASE("cubes are closed under coordinatewise products") {
    std::mt19937_64 rng(53);
    auto s = cubify(precube_4d());
    std::vector<std::vector<Rat>> pts;
    MonomialMap par = parametrize(s);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> t(static_cast<std::size_t>(par.d));
        for (int k = 0; k < par.d; ++k) t[static_cast<std::size_t>(k)] = Rat(rng() % 4, 3);
        pts.push_back(par.eval(t));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            if (!member(pts[i], s) || !member(pts[j], s)) continue;
            std::vector<Rat> prod(pts[i].size());
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = pts[i][k] * pts[j][k];
            CHECK(member(prod, s));
        }
}

TEST_CASE("killer certificates exist exactly for absent strata on golden cones") {
    const std::vector<Cone> golden{
        cone_of_system(precube_4d()),
        log_cone_of_map(map_xy_yz_xz()),
        Cone::from_rays(3, {IntVec{1, 1, 1}, IntVec{1, 0, 2}, IntVec{0, 1, 2}, IntVec{0, 0, 1}}),
        log_cone_of_map(MonomialMap(3, 4, {IntVec{1, 1, 0, 1}, IntVec{0, 1, 1, 0}, IntVec{0, 0, 1, 1}})),
    };
    for (const auto& c : golden) {
        const ToricCube cube(c.ambient_dim(), c);
        for (const auto& st : strata(cube))
            CHECK(killer_certificate(c, st.support).has_value() == !st.present);
    }
}

TEST_CASE("intersect_interiors contains shared strictly positive points") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        MonomialMap m1 = random_map(rng, 3, 3), m2 = random_map(rng, 3, 3);
        if (m1.n != m2.n) continue;
        auto c1 = ToricCube::from_map(m1), c2 = ToricCube::from_map(m2);
        // a shared interior witness must land in the intersection cube's interior
        const Cone meet = intersect(c1.log_cone(), c2.log_cone());
        const IntVec p = meet.relint_point();
        if (c1.log_cone().in_relint(p) && c2.log_cone().in_relint(p)) {
            auto c3 = intersect_interiors(c1, c2);
            REQUIRE(c3);
            CHECK(c3->log_cone().in_relint(p));
        }
    }
}
