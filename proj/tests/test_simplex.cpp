#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qecon/error.hpp"
#include "qecon/simplex.hpp"
#include "support.hpp"

using namespace qecon;
using namespace qecon::simplex;

namespace {

LinearProgram worked() {
    LinearProgram lp;
    lp.c = {3, 2};
    lp.a = {{1, 1}, {1, 0}};
    lp.b = {4, 2};
    return lp;
}

LinearProgram random_lp(qtest::Gen& g) {
    LinearProgram lp;
    lp.c = {double(g.integer(-5, 9)), double(g.integer(-5, 9))};
    lp.d = g.integer(-3, 3);
    const int m = g.integer(0, 4);
    for (int i = 0; i < m; ++i) {
        lp.a.push_back({double(g.integer(-3, 6)), double(g.integer(-3, 6))});
        lp.b.push_back(g.integer(0, 12));
    }
    return lp;
}

}  // namespace

TEST_CASE("canonicalize") {
    const auto t = canonicalize(worked());
    CHECK(t.grid == linalg::Matrix{{1, -3, -2, 0, 0, 0}, {0, 1, 1, 1, 0, 4}, {0, 1, 0, 0, 1, 2}});
    CHECK(t.basis == std::vector<std::size_t>{0, 3, 4});

    LinearProgram deg;
    deg.c = {1};
    deg.a = {{1}};
    deg.b = {0};
    const auto td = canonicalize(deg);
    CHECK(td.objective_value() == 0.0);
    CHECK(td.rhs(1) == 0.0);

    LinearProgram constant;
    constant.c = {0, 0};
    constant.d = 5;
    constant.a = {{1, 1}};
    constant.b = {3};
    const auto sc = solve_simplex(constant);
    CHECK(sc.status == Status::Optimal);
    CHECK(sc.z == doctest::Approx(5));
    CHECK(sc.iterations == 0);

    LinearProgram neg = worked();
    neg.b = {-1, 2};
    CHECK_THROWS_AS(canonicalize(neg), Unsupported);
    LinearProgram mn = worked();
    mn.sense = Sense::Min;
    CHECK_THROWS_AS(canonicalize(mn), Unsupported);
}

TEST_CASE("negate to max") {
    LinearProgram lp;
    lp.sense = Sense::Min;
    lp.c = {-1};
    lp.a = {{1}};
    lp.b = {2};
    const auto mx = negate_to_max(lp);
    CHECK(mx.sense == Sense::Max);
    CHECK(mx.c == std::vector<double>{1});
    const auto s = solve_simplex(lp);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(2));
    CHECK(s.z == doctest::Approx(-2));

    LinearProgram origin;
    origin.sense = Sense::Min;
    origin.c = {1, 1};
    const auto so = solve_simplex(origin);
    REQUIRE(so.status == Status::Optimal);
    CHECK(so.z == doctest::Approx(0));
    CHECK(so.x == std::vector<double>{0, 0});

    LinearProgram cover;
    cover.sense = Sense::Min;
    cover.c = {1, 1};
    cover.a = {{1, 1}};
    cover.b = {2};
    cover.relations = {Relation::GreaterEqual};
    CHECK(solve_simplex(cover).status == Status::Unsupported);
}

TEST_CASE("pivot") {
    const auto t = canonicalize(worked());
    const auto p = pivot(t, 2, 1);
    CHECK(p.basis[2] == 1);
    CHECK(p.rhs(2) == doctest::Approx(2));
    CHECK(p.grid(0, 1) == 0.0);
    CHECK(p.grid(1, 1) == 0.0);

    const auto same = pivot(t, 1, 3);
    CHECK(same.grid == t.grid);
    CHECK_THROWS_AS(pivot(t, 2, 2), InvalidInput);
}

TEST_CASE("solve simplex") {
    const auto s = solve_simplex(worked());
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(2));
    CHECK(s.x[1] == doctest::Approx(2));
    CHECK(s.z == doctest::Approx(10));
    CHECK(s.slacks[0] == doctest::Approx(0));
    CHECK(s.slacks[1] == doctest::Approx(0));

    LinearProgram lp;
    lp.c = {1, 0};
    lp.a = {{1, 0}, {0, 1}};
    lp.b = {2, 1};
    const auto r = solve_simplex(lp);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.x[0] == doctest::Approx(2));
    CHECK(r.x[1] == doctest::Approx(0));
    CHECK(r.z == doctest::Approx(2));
    CHECK(r.slacks[1] == doctest::Approx(1));

    LinearProgram unb;
    unb.c = {1};
    CHECK(solve_simplex(unb).status == Status::Unbounded);

    LinearProgram bad = worked();
    bad.b = {1};
    CHECK_THROWS_AS(solve_simplex(bad), DimensionMismatch);
}

TEST_CASE("trace invariants") {
    const auto s = solve_simplex(worked(), true);
    REQUIRE(s.trace.size() == s.iterations + 1);
    double previous = -1e300;
    for (const auto& t : s.trace) {
        for (std::size_t i = 1; i <= t.m; ++i) CHECK(t.rhs(i) >= -1e-9);
        for (std::size_t i = 0; i <= t.m; ++i) {
            const std::size_t col = t.basis[i];
            for (std::size_t r = 0; r <= t.m; ++r) CHECK(t.grid(r, col) == doctest::Approx(r == i ? 1.0 : 0.0));
        }
        CHECK(t.objective_value() >= previous - 1e-9);
        previous = t.objective_value();
    }
}

TEST_CASE("vertex oracle") {
    const auto v = vertex_oracle(worked());
    REQUIRE(v.solution.status == Status::Optimal);
    CHECK(v.solution.z == doctest::Approx(10));
    CHECK(v.vertices.size() == 4);
    REQUIRE(v.isoquant_slope);
    CHECK(*v.isoquant_slope == doctest::Approx(-1.5));

    LinearProgram empty;
    empty.c = {1, 1};
    empty.a = {{1, 0}};
    empty.b = {-1};
    const auto e = vertex_oracle(empty);
    CHECK(e.solution.status == Status::Infeasible);
    CHECK(e.vertices.empty());

    LinearProgram flat;
    flat.c = {0, 0};
    flat.d = 7;
    flat.a = {{1, 1}};
    flat.b = {3};
    const auto f = vertex_oracle(flat);
    REQUIRE(f.solution.status == Status::Optimal);
    CHECK(f.solution.z == doctest::Approx(7));

    LinearProgram edge;
    edge.c = {1, 1};
    edge.a = {{1, 1}};
    edge.b = {3};
    CHECK(vertex_oracle(edge).optimal_vertices.size() == 2);

    LinearProgram up;
    up.c = {1, 0};
    up.a = {{0, 1}};
    up.b = {1};
    CHECK(vertex_oracle(up).solution.status == Status::Unbounded);
}

TEST_CASE("property: simplex agrees with the vertex oracle") {
    qtest::Gen g(41);
    int optimal = 0;
    for (int k = 0; k < 500; ++k) {
        const LinearProgram lp = random_lp(g);
        const auto s = solve_simplex(lp, true);
        const auto v = vertex_oracle(lp);
        CHECK(s.status == v.solution.status);
        if (s.status != Status::Optimal || v.solution.status != Status::Optimal) continue;
        ++optimal;
        CHECK(std::abs(s.z - v.solution.z) <= 1e-6);
        CHECK(std::abs(s.z - lp.objective(s.x)) <= 1e-7);
        for (double x : s.x) CHECK(x >= -1e-9);
        for (std::size_t i = 0; i < lp.constraints(); ++i) {
            const double ax = lp.a[i][0] * s.x[0] + lp.a[i][1] * s.x[1];
            CHECK(ax <= lp.b[i] + 1e-7);
            CHECK(std::abs(lp.b[i] - ax - s.slacks[i]) <= 1e-7);
        }
        const auto& last = s.trace.back();
        for (std::size_t j = 1; j <= last.n + last.m; ++j) CHECK(last.grid(0, j) >= -1e-9);
        double previous = -1e300;
        for (const auto& t : s.trace) {
            for (std::size_t i = 1; i <= t.m; ++i) CHECK(t.rhs(i) >= -1e-9);
            CHECK(t.objective_value() >= previous - 1e-9);
            previous = t.objective_value();
        }
    }
    CHECK(optimal > 100);
}

TEST_CASE("iteration cap") {
    CHECK(iteration_cap(worked()) == 10 * 4 + 100);
}
