#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opalg/matrix.hpp"

using namespace opalg;

namespace {

template <class F>
Matrix<F> from_rows(int nc, const std::vector<std::vector<long>>& rows) {
    Matrix<F> m((int)rows.size(), nc);
    for (int r = 0; r < (int)rows.size(); ++r)
        for (int c = 0; c < nc; ++c)
            if (rows[r][c] != 0) m.set(r, c, F(rows[r][c]));
    return m;
}

template <class F>
Matrix<F> random_matrix(std::mt19937& rng, int nr, int nc) {
    std::uniform_int_distribution<int> entry(-3, 3);
    Matrix<F> m(nr, nc);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
            int v = entry(rng);
            if (v != 0) m.set(r, c, F(v));
        }
    return m;
}

}  // namespace

TEST_CASE("rref identity and zero") {
    auto id = Matrix<Rational>::identity(3);
    auto r = rref(id);
    CHECK(r.rank == 3);
    CHECK(r.kernel_basis.empty());

    Matrix<Rational> z(2, 4);
    auto rz = rref(z);
    CHECK(rz.rank == 0);
    CHECK(rz.kernel_basis.size() == 4);
}

TEST_CASE("rref rank-one with kernel (-2,1)") {
    auto m = from_rows<Rational>(2, {{1, 2}, {2, 4}});
    auto r = rref(m);
    REQUIRE(r.rank == 1);
    REQUIRE(r.kernel_basis.size() == 1);
    // kernel spanned by (−2, 1)
    const auto& k = r.kernel_basis[0];
    CHECK(k[0] * Rational(1) == Rational(-2) * k[1]);
    CHECK(is_zero_vec(m.apply(k)));
}

TEST_CASE("solve basics") {
    auto id = Matrix<Rational>::identity(3);
    Vec<Rational> b{Rational(4), Rational(-1), Rational(7, 2)};
    auto x = solve(id, b);
    REQUIRE(x);
    CHECK(*x == b);

    Matrix<Rational> z(2, 2);
    Vec<Rational> nz{Rational(1), Rational(0)};
    CHECK(!solve(z, nz));

    Matrix<Rational> two(1, 1);
    two.set(0, 0, Rational(2));
    auto half = solve(two, Vec<Rational>{Rational(3)});
    REQUIRE(half);
    CHECK((*half)[0] == Rational(3, 2));

    CHECK_THROWS_AS(solve(two, Vec<Rational>{Rational(1), Rational(1)}), error);
}

TEST_CASE("rank(m) == rank(transpose m) and exact kernels, random over Q and F5") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        int nr = 1 + (int)(rng() % 5), nc = 1 + (int)(rng() % 5);
        auto m = random_matrix<Rational>(rng, nr, nc);
        auto r = rref(m);
        CHECK(r.rank == rref(m.transpose()).rank);
        CHECK(r.rank + (int)r.kernel_basis.size() == nc);
        for (auto& v : r.kernel_basis) CHECK(is_zero_vec(m.apply(v)));
    }
    Fp::set_modulus(5);
    for (int trial = 0; trial < 40; ++trial) {
        int nr = 1 + (int)(rng() % 5), nc = 1 + (int)(rng() % 5);
        auto m = random_matrix<Fp>(rng, nr, nc);
        auto r = rref(m);
        CHECK(r.rank == rref(m.transpose()).rank);
        CHECK(r.rank + (int)r.kernel_basis.size() == nc);
        for (auto& v : r.kernel_basis) CHECK(is_zero_vec(m.apply(v)));
    }
}

TEST_CASE("solve round-trip on random systems") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int nr = 1 + (int)(rng() % 4), nc = 1 + (int)(rng() % 4);
        auto m = random_matrix<Rational>(rng, nr, nc);
        // build a guaranteed-consistent rhs
        Vec<Rational> x0(nc);
        for (auto& v : x0) v = Rational((long)(rng() % 7) - 3);
        Vec<Rational> b = m.apply(x0);
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m.apply(*x) == b);
    }
}

TEST_CASE("image basis spans column space") {
    auto m = from_rows<Rational>(3, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    auto r = rref(m);
    RowSpace<Rational> span(m.rows());
    for (auto& v : r.image_basis) span.add(v);
    for (int c = 0; c < m.cols(); ++c) CHECK(span.contains(m.column(c)));
    CHECK(span.rank() == r.rank);
}

TEST_CASE("RowSpace reduce and membership") {
    RowSpace<Rational> s(3);
    CHECK(s.add({Rational(1), Rational(1), Rational(0)}));
    CHECK(s.add({Rational(0), Rational(1), Rational(1)}));
    CHECK(!s.add({Rational(1), Rational(2), Rational(1)}));
    CHECK(s.contains({Rational(2), Rational(3), Rational(1)}));
    CHECK(!s.contains({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("Fp fraction with bad denominator errors") {
    Fp::set_modulus(2);
    CHECK_THROWS_AS(Fp::from_fraction(1, 6), error);
    Fp::set_modulus(5);
    CHECK(Fp::from_fraction(1, 6) * Fp(6) == Fp(1));
}
