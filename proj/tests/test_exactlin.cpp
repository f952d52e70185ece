#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pstrace/errors.hpp"
#include "pstrace/matrix.hpp"
#include "pstrace/subspace.hpp"

using namespace pstrace;

namespace {

Mat mat2(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<Vec> rv;
    std::size_t cols = 0;
    for (auto& r : rows) {
        Vec v;
        for (int x : r) v.push_back(Rat(x));
        cols = v.size();
        rv.push_back(v);
    }
    return Mat::from_rows(rv, cols);
}

Vec vec(std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(Rat(x));
    return v;
}

Rat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return rat_frac(num(rng), den(rng));
}

Mat random_mat(std::mt19937& rng, std::size_t r, std::size_t c) {
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_rat(rng);
    return m;
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(rat_parse("3/6") == Rat(1, 2));
    CHECK(rat_parse("-4") == Rat(-4));
    CHECK(rat_parse("0") == Rat(0));
    CHECK(rat_parse("-7/21") == Rat(-1, 3));
    CHECK_THROWS_AS(rat_parse("1.5"), ParseError);
    CHECK_THROWS_AS(rat_parse("1e3"), ParseError);
    CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
    CHECK_THROWS_AS(rat_parse(""), ParseError);
}

TEST_CASE("rref examples") {
    // proportional rows collapse to a single pivot row
    Echelon e1 = rref(mat2({{2, 4}, {1, 2}}));
    CHECK(e1.rank == 1);
    CHECK(e1.m.row(0) == vec({1, 2}));
    CHECK(e1.m.row(1) == vec({0, 0}));

    Echelon e2 = rref(Mat::identity(3));
    CHECK(e2.rank == 3);
    CHECK(e2.m == Mat::identity(3));

    // hand elimination: r2 -= 3 r1, scale, back-substitute -> identity
    Echelon e3 = rref(mat2({{1, 2}, {3, 4}}));
    CHECK(e3.rank == 2);
    CHECK(e3.m == Mat::identity(2));
    CHECK(e3.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref is idempotent on random matrices") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> d(1, 7);
        Mat m = random_mat(rng, d(rng), d(rng));
        Echelon once = rref(m);
        Echelon twice = rref(once.m);
        CHECK(once.m == twice.m);
        CHECK(once.rank == twice.rank);
    }
}

TEST_CASE("nullspace examples") {
    CHECK(nullspace(Mat(2, 2)).dim() == 2);
    CHECK(nullspace(Mat::identity(4)).dim() == 0);

    Subspace ker = nullspace(mat2({{1, 1}}));
    CHECK(ker.dim() == 1);
    CHECK(ker.basis_vector(0) == Vec{Rat(1), Rat(-1)});
}

TEST_CASE("solve examples") {
    auto x1 = solve(Mat::identity(2), vec({3, 5}));
    REQUIRE(x1.has_value());
    CHECK(*x1 == vec({3, 5}));

    auto x2 = solve(mat2({{1, 1}}), vec({2}));
    REQUIRE(x2.has_value());
    CHECK((*x2)[0] + (*x2)[1] == Rat(2));

    CHECK(!solve(mat2({{1}, {1}}), vec({0, 1})).has_value());
}

TEST_CASE("solutions satisfy the system exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> d(1, 6);
        const std::size_t r = d(rng), c = d(rng);
        Mat m = random_mat(rng, r, c);
        Vec rhs(r);
        for (auto& x : rhs) x = random_rat(rng);
        auto sol = solve(m, rhs);
        if (sol) CHECK(mat_apply(m, *sol) == rhs);
    }
}

TEST_CASE("subspace membership, sum, intersection") {
    Subspace sx = Subspace::span(2, {vec({1, 0})});
    CHECK(sx.contains(vec({2, 0})));
    CHECK(!sx.contains(vec({0, 1})));

    Subspace sy = Subspace::span(2, {vec({0, 1})});
    CHECK(subspace_sum(sx, sy) == Subspace::full(2));

    Subspace diag = Subspace::span(2, {vec({1, 1})});
    CHECK(subspace_intersection(diag, sx).dim() == 0);

    CHECK_THROWS_AS(subspace_sum(sx, Subspace::full(3)), DimensionMismatch);
}

TEST_CASE("dimension formula for random subspace pairs") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::size_t> ad(2, 8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = ad(rng);
        std::uniform_int_distribution<std::size_t> kd(0, n);
        std::vector<Vec> rows_s, rows_t;
        for (std::size_t i = 0, k = kd(rng); i < k; ++i) rows_s.push_back(random_mat(rng, 1, n).row(0));
        for (std::size_t i = 0, k = kd(rng); i < k; ++i) rows_t.push_back(random_mat(rng, 1, n).row(0));
        Subspace s = Subspace::span(n, rows_s), t = Subspace::span(n, rows_t);
        CHECK(subspace_sum(s, t).dim() + subspace_intersection(s, t).dim() == s.dim() + t.dim());
    }
}

TEST_CASE("coordinates round-trip through the rref basis") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Subspace s = Subspace::span(5, {random_mat(rng, 1, 5).row(0), random_mat(rng, 1, 5).row(0),
                                        random_mat(rng, 1, 5).row(0)});
        Vec coords(s.dim());
        for (auto& x : coords) x = random_rat(rng);
        Vec v = s.from_coordinates(coords);
        auto back = s.coordinates_of(v);
        REQUIRE(back.has_value());
        CHECK(*back == coords);
    }
}

TEST_CASE("parallel matrix product matches the serial reference") {
    std::mt19937 rng(555);
    for (auto [r, k, c] : {std::tuple<int, int, int>{5, 4, 6}, {17, 17, 17}, {24, 9, 31}}) {
        Mat x = random_mat(rng, r, k), y = random_mat(rng, k, c);
        CHECK(mat_mul(x, y) == mat_mul_serial(x, y));
    }
}

TEST_CASE("inverse") {
    Mat m = mat2({{1, 2}, {3, 4}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(mat_mul(m, *inv) == Mat::identity(2));
    CHECK(!inverse(mat2({{1, 2}, {2, 4}})).has_value());
}
