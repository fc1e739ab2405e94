#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qecon/error.hpp"
#include "qecon/linsolve.hpp"
#include "support.hpp"

using namespace qecon;
using namespace qecon::linsolve;
using linalg::Orientation;

namespace {

Matrix random_matrix(qtest::Gen& g, std::size_t r, std::size_t c, bool integer = false) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = integer ? g.integer(-4, 4) : g.real(-5, 5);
    return m;
}

Vector random_vector(qtest::Gen& g, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = g.real(-5, 5);
    return Vector(v);
}

// Cofactor expansion, independent of the elimination code.
double cofactor_det(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = a(i, k);
        sum += (j % 2 ? -1.0 : 1.0) * a(0, j) * cofactor_det(minor);
    }
    return sum;
}

bool solves(const Matrix& a, const Vector& x, const Vector& b, double tol) {
    const Vector r = a * x;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (std::abs(r[i] - b[i]) > tol) return false;
    return true;
}

bool is_identity(const Matrix& m, double tol) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j) - (i == j ? 1.0 : 0.0)) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("rref") {
    const auto id = rref(Matrix::identity(3));
    CHECK(id.reduced == Matrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1, 2});

    CHECK(rref(Matrix{{1, 2}, {2, 4}}).rank == 1);

    const auto swap = rref(Matrix{{0, 1}, {1, 0}});
    CHECK(swap.reduced == Matrix::identity(2));
    CHECK(swap.rank == 2);
    CHECK(swap.det_factor == doctest::Approx(-1));

    CHECK(rref(Matrix::zero(2, 3)).rank == 0);
}

TEST_CASE("solve: three regimes") {
    const auto unique = solve({Matrix{{1, 1}, {1, -1}}, Vector{3, 1}});
    REQUIRE(unique.kind == SolutionKind::Unique);
    CHECK((*unique.particular)[0] == doctest::Approx(2));
    CHECK((*unique.particular)[1] == doctest::Approx(1));

    const auto none = solve({Matrix{{1, 1}, {1, 1}}, Vector{1, 2}});
    CHECK(none.kind == SolutionKind::None);
    CHECK(none.rank_a == 1);
    CHECK(none.rank_ab == 2);
    CHECK_FALSE(none.particular);

    const auto many = solve({Matrix{{1, 1}}, Vector{0}});
    REQUIRE(many.kind == SolutionKind::Multiple);
    REQUIRE(many.free_directions.size() == 1);
    CHECK(many.free_directions[0][0] == doctest::Approx(-1));
    CHECK(many.free_directions[0][1] == doctest::Approx(1));

    CHECK_THROWS_AS(LinearSystem(Matrix{{1, 2}}, Vector{1, 2}), DimensionMismatch);
}

TEST_CASE("determinant") {
    CHECK(determinant(Matrix{{1, 2}, {3, 4}}) == doctest::Approx(-2));
    CHECK(determinant(Matrix::identity(3)) == doctest::Approx(1));
    CHECK(determinant(Matrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == doctest::Approx(-3));
    CHECK(determinant(Matrix{{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 5}}) == doctest::Approx(120));
    CHECK_THROWS_AS(determinant(Matrix{{1, 2}}), DimensionMismatch);
    CHECK(is_singular(0.0));
    CHECK_FALSE(is_singular(1e-3));
}

TEST_CASE("inverse") {
    CHECK(inverse(Matrix::identity(2)) == Matrix::identity(2));
    const Matrix d = inverse(Matrix{{2, 0}, {0, 4}});
    CHECK(d(0, 0) == doctest::Approx(0.5));
    CHECK(d(1, 1) == doctest::Approx(0.25));
    const Matrix u = inverse(Matrix{{1, 1}, {0, 1}});
    CHECK(u(0, 1) == doctest::Approx(-1));
    CHECK(u(0, 0) == doctest::Approx(1));
    CHECK(u(1, 1) == doctest::Approx(1));
    CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("symmetric eigenproblems") {
    const auto diag = eigen_sym(Matrix{{2, 0}, {0, 3}});
    REQUIRE(diag.size() == 2);
    CHECK(diag[0].value == doctest::Approx(2));
    CHECK(diag[1].value == doctest::Approx(3));

    const auto two = eigen_sym(Matrix{{2, 1}, {1, 2}});
    REQUIRE(two.size() == 2);
    CHECK(two[0].value == doctest::Approx(1));
    CHECK(two[1].value == doctest::Approx(3));

    const auto id = eigen_sym(Matrix::identity(3));
    REQUIRE(id.size() == 3);
    for (const auto& p : id) CHECK(p.value == doctest::Approx(1));

    CHECK_THROWS_AS(eigen_sym(Matrix{{1, 2}, {0, 1}}), InvalidInput);
    CHECK_THROWS_AS(eigen_sym(Matrix::identity(4)), Unsupported);
}

TEST_CASE("property: solve agrees with the inverse") {
    qtest::Gen g(21);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = g.integer(1, 4);
        const Matrix a = random_matrix(g, n, n);
        if (std::abs(cofactor_det(a)) < 1e-3) continue;
        const Vector b = random_vector(g, n);
        const auto s = solve({a, b});
        REQUIRE(s.kind == SolutionKind::Unique);
        const Vector oracle = inverse(a) * b;
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs((*s.particular)[i] - oracle[i]) <= 1e-6);
        CHECK(is_identity(a * inverse(a), 1e-7));
        CHECK(is_identity(inverse(a) * a, 1e-7));
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("property: rank of the transpose") {
    qtest::Gen g(22);
    for (int k = 0; k < 200; ++k) {
        const Matrix a = random_matrix(g, g.integer(1, 5), g.integer(1, 5), true);
        CHECK(rank(a) == rank(a.transposed()));
    }
}

TEST_CASE("property: determinant product rule and cofactor oracle") {
    qtest::Gen g(23);
    for (int k = 0; k < 200; ++k) {
        const Matrix a = random_matrix(g, 3, 3), b = random_matrix(g, 3, 3);
        const double da = determinant(a), db = determinant(b);
        CHECK(std::abs(determinant(a * b) - da * db) <= 1e-6 * (1 + std::abs(da * db)));
        CHECK(std::abs(da - cofactor_det(a)) <= 1e-9 * (1 + std::abs(da)));
        const Matrix c = random_matrix(g, 4, 4);
        CHECK(std::abs(determinant(c) - cofactor_det(c)) <= 1e-8 * (1 + std::abs(cofactor_det(c))));
    }
}

TEST_CASE("property: inverse rules") {
    qtest::Gen g(24);
    for (int k = 0; k < 100; ++k) {
        const Matrix a = random_matrix(g, 3, 3), b = random_matrix(g, 3, 3);
        if (std::abs(cofactor_det(a)) < 0.1 || std::abs(cofactor_det(b)) < 0.1) continue;
        const auto near = [](const Matrix& x, const Matrix& y) {
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (std::abs(x(i, j) - y(i, j)) > 1e-6 * (1 + std::abs(y(i, j)))) return false;
            return true;
        };
        CHECK(near(inverse(inverse(a)), a));
        CHECK(near(inverse(a * b), inverse(b) * inverse(a)));
        CHECK(near(inverse(a.transposed()), inverse(a).transposed()));
        CHECK(near(inverse(2.5 * a), (1 / 2.5) * inverse(a)));
    }
}

TEST_CASE("property: equivalence transformations keep the solution set") {
    qtest::Gen g(25);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = g.integer(1, 4), n = g.integer(1, 4);
        Matrix a = random_matrix(g, m, n, true);
        std::vector<double> bv(m);
        for (auto& x : bv) x = g.integer(-5, 5);
        // Make some systems rank deficient.
        if (m >= 2 && g.coin()) {
            for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = 2 * a(0, j);
            if (g.coin()) bv[m - 1] = 2 * bv[0];
        }
        const LinearSystem base{a, Vector(bv)};
        const auto ref = solve(base);

        Matrix a2 = a;
        std::vector<double> b2 = bv;
        const std::size_t i = g.integer(0, int(m) - 1), j = g.integer(0, int(m) - 1);
        switch (g.integer(0, 3)) {
            case 0:  // swap two rows
                for (std::size_t c = 0; c < n; ++c) std::swap(a2(i, c), a2(j, c));
                std::swap(b2[i], b2[j]);
                break;
            case 1: {  // rescale a row
                const double s = g.coin() ? 3.0 : -0.5;
                for (std::size_t c = 0; c < n; ++c) a2(i, c) *= s;
                b2[i] *= s;
                break;
            }
            case 2:  // add a multiple of another row
                if (i != j) {
                    for (std::size_t c = 0; c < n; ++c) a2(i, c) += 2 * a2(j, c);
                    b2[i] += 2 * b2[j];
                }
                break;
            default: {  // swap two columns (renames unknowns)
                if (n < 2) break;
                for (std::size_t r = 0; r < m; ++r) std::swap(a2(r, 0), a2(r, 1));
                const auto s = solve({a2, Vector(b2)});
                CHECK(s.kind == ref.kind);
                if (ref.particular) {
                    std::vector<double> x((*ref.particular).entries().begin(), (*ref.particular).entries().end());
                    std::swap(x[0], x[1]);
                    CHECK(solves(a2, Vector(x), Vector(b2), 1e-7));
                }
                continue;
            }
        }
        const auto s = solve({a2, Vector(b2)});
        CHECK(s.kind == ref.kind);
        CHECK(s.rank_a == ref.rank_a);
        if (ref.particular) {
            CHECK(solves(a2, *ref.particular, Vector(b2), 1e-7));
            CHECK(solves(a, *s.particular, Vector(bv), 1e-7));
        }
        if (ref.kind == SolutionKind::Multiple) {
            CHECK(ref.free_directions.size() == n - ref.rank_a);
            // particular + combination of free directions still solves
            Vector x = *ref.particular;
            for (const auto& d : ref.free_directions) x = x + g.real(-2, 2) * d;
            CHECK(solves(a, x, Vector(bv), 1e-7));
        }
        if (ref.kind == SolutionKind::None) CHECK(ref.rank_a != ref.rank_ab);
    }
}

TEST_CASE("property: eigenvectors") {
    qtest::Gen g(26);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = g.integer(1, 3);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = g.real(-5, 5);
        const auto pairs = eigen_sym(a);
        REQUIRE(pairs.size() == n);
        for (const auto& p : pairs) {
            CHECK(linalg::norm(p.vector) == doctest::Approx(1));
            const Vector av = a * p.vector;
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(av[i] - p.value * p.vector[i]) <= 1e-7);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(pairs[i].value - pairs[j].value) > 1e-6)
                    CHECK(std::abs(linalg::inner(pairs[i].vector, pairs[j].vector)) <= 1e-7);
    }
}
