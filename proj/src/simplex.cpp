#include "qecon/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "qecon/error.hpp"

namespace qecon::simplex {
namespace {

constexpr double kPivotMin = 1e-9;
constexpr double kReducedCostTol = 1e-12;
constexpr double kFeasTol = 1e-9;

}  // namespace

void LinearProgram::validate() const {
    const std::size_t n = c.size();
    if (n == 0) throw InvalidInput("linear program needs at least one variable");
    if (a.size() != b.size())
        throw DimensionMismatch("constraint matrix has " + std::to_string(a.size()) + " rows but b has " +
                                std::to_string(b.size()) + " entries");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].size() != n)
            throw DimensionMismatch("constraint row " + std::to_string(i + 1) + " has " +
                                    std::to_string(a[i].size()) + " coefficients, expected " + std::to_string(n));
    if (!relations.empty() && relations.size() != b.size())
        throw DimensionMismatch("relation list must have one entry per constraint");
    if (!names.empty() && names.size() != n) throw DimensionMismatch("variable name list must have one entry per variable");
}

double LinearProgram::objective(const std::vector<double>& x) const {
    double z = d;
    for (std::size_t j = 0; j < c.size(); ++j) z += c[j] * x[j];
    return z;
}

std::string SimplexTableau::variable_name(std::size_t col) const {
    if (col == 0) return "z";
    if (col <= n) return "x" + std::to_string(col);
    if (col <= n + m) return "s" + std::to_string(col - n);
    return "RHS";
}

LinearProgram negate_to_max(const LinearProgram& lp) {
    lp.validate();
    LinearProgram out = lp;
    if (lp.sense == Sense::Min) {
        for (double& cj : out.c) cj = -cj;
        out.d = -out.d;
        out.sense = Sense::Max;
    }
    for (std::size_t i = 0; i < out.constraints(); ++i) {
        if (lp.relation(i) != Relation::GreaterEqual) continue;
        for (double& aij : out.a[i]) aij = -aij;
        out.b[i] = -out.b[i];
    }
    out.relations.clear();
    return out;
}

SimplexTableau canonicalize(const LinearProgram& lp) {
    lp.validate();
    if (lp.sense != Sense::Max) throw Unsupported("canonical form needs a maximum problem; apply negate_to_max first");
    for (std::size_t i = 0; i < lp.constraints(); ++i) {
        if (lp.relation(i) != Relation::LessEqual)
            throw Unsupported("canonical form needs '<=' restrictions; apply negate_to_max first");
        if (lp.b[i] < 0.0)
            throw Unsupported("restriction " + std::to_string(i + 1) +
                              " has a negative capacity; an artificial starting basis would be required");
    }

    const std::size_t n = lp.variables();
    const std::size_t m = lp.constraints();
    SimplexTableau t{linalg::Matrix(1 + m, 1 + n + m + 1), {}, n, m, 0};
    t.grid(0, 0) = 1.0;
    for (std::size_t j = 0; j < n; ++j) t.grid(0, 1 + j) = -lp.c[j];
    t.grid(0, t.rhs_col()) = lp.d;
    t.basis.push_back(0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.grid(1 + i, 1 + j) = lp.a[i][j];
        t.grid(1 + i, 1 + n + i) = 1.0;
        t.grid(1 + i, t.rhs_col()) = lp.b[i];
        t.basis.push_back(1 + n + i);
    }
    return t;
}

SimplexTableau pivot(const SimplexTableau& t, std::size_t row, std::size_t col) {
    if (row == 0 || row > t.m) throw InvalidInput("pivot row must be a restriction row");
    if (col == 0 || col > t.n + t.m) throw InvalidInput("pivot column must be an x or slack column");
    const double p = t.grid(row, col);
    if (!(p > kPivotMin)) throw InvalidInput("pivot element must be positive, got " + std::to_string(p));

    SimplexTableau out = t;
    linalg::Matrix& g = out.grid;
    const std::size_t width = g.cols();
    for (std::size_t j = 0; j < width; ++j) g(row, j) /= p;
    g(row, col) = 1.0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (i == row) continue;
        const double f = g(i, col);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < width; ++j) g(i, j) -= f * g(row, j);
        g(i, col) = 0.0;
    }
    out.basis[row] = col;
    ++out.iteration;
    return out;
}

std::size_t iteration_cap(const LinearProgram& lp) { return 10 * (lp.variables() + lp.constraints()) + 100; }

LpSolution solve_simplex(const LinearProgram& lp, bool keep_trace) {
    const LinearProgram max_lp = negate_to_max(lp);
    const double sign = lp.sense == Sense::Min ? -1.0 : 1.0;

    LpSolution sol;
    SimplexTableau t;
    try {
        t = canonicalize(max_lp);
    } catch (const Unsupported& e) {
        sol.status = Status::Unsupported;
        sol.message = e.what();
        return sol;
    }
    if (keep_trace) sol.trace.push_back(t);

    const std::size_t cap = iteration_cap(lp);
    const std::size_t cols = t.n + t.m;
    sol.status = Status::Optimal;
    while (true) {
        // S1/S2: most negative reduced cost, smallest column index on ties.
        std::size_t jstar = 0;
        double most_negative = -kReducedCostTol;
        for (std::size_t j = 1; j <= cols; ++j) {
            if (t.grid(0, j) < most_negative) {
                most_negative = t.grid(0, j);
                jstar = j;
            }
        }
        if (jstar == 0) break;

        // S3/S4: ratio test over positive column entries, smallest row on ties.
        std::size_t istar = 0;
        double best_ratio = 0.0;
        for (std::size_t i = 1; i <= t.m; ++i) {
            const double aij = t.grid(i, jstar);
            if (aij <= kPivotMin) continue;
            const double ratio = t.rhs(i) / aij;
            if (istar == 0 || ratio < best_ratio) {
                istar = i;
                best_ratio = ratio;
            }
        }
        if (istar == 0) {
            sol.status = Status::Unbounded;
            sol.message = "objective is unbounded along " + t.variable_name(jstar);
            break;
        }
        if (t.iteration >= cap)
            throw NumericalFailure("simplex exceeded " + std::to_string(cap) + " iterations (cycling?)");
        t = pivot(t, istar, jstar);
        if (keep_trace) sol.trace.push_back(t);
    }

    // Non-basis variables are zero; each basis variable reads off its row.
    sol.x.assign(t.n, 0.0);
    sol.slacks.assign(t.m, 0.0);
    for (std::size_t i = 1; i <= t.m; ++i) {
        const std::size_t col = t.basis[i];
        if (col <= t.n)
            sol.x[col - 1] = t.rhs(i);
        else
            sol.slacks[col - t.n - 1] = t.rhs(i);
    }
    sol.z = sign * t.objective_value();
    sol.iterations = t.iteration;
    return sol;
}

VertexReport vertex_oracle(const LinearProgram& lp) {
    lp.validate();
    if (lp.variables() != 2) throw InvalidInput("the graphical method needs exactly two variables");

    // Half-planes g . x <= h, including both non-negativity constraints.
    struct HalfPlane {
        double g1, g2, h;
    };
    std::vector<HalfPlane> planes;
    for (std::size_t i = 0; i < lp.constraints(); ++i) {
        const double s = lp.relation(i) == Relation::GreaterEqual ? -1.0 : 1.0;
        planes.push_back({s * lp.a[i][0], s * lp.a[i][1], s * lp.b[i]});
    }
    const std::size_t restrictions = planes.size();
    planes.push_back({-1.0, 0.0, 0.0});
    planes.push_back({0.0, -1.0, 0.0});

    const auto feasible = [&](double x1, double x2) {
        return std::all_of(planes.begin(), planes.end(), [&](const HalfPlane& p) {
            return p.g1 * x1 + p.g2 * x2 <= p.h + kFeasTol * (1.0 + std::abs(p.h));
        });
    };

    VertexReport report;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        for (std::size_t k = i + 1; k < planes.size(); ++k) {
            const HalfPlane& p = planes[i];
            const HalfPlane& q = planes[k];
            const double det = p.g1 * q.g2 - p.g2 * q.g1;
            if (std::abs(det) < 1e-12) continue;
            double x1 = (p.h * q.g2 - p.g2 * q.h) / det;
            double x2 = (p.g1 * q.h - p.h * q.g1) / det;
            if (x1 == 0.0) x1 = 0.0;  // drop -0
            if (x2 == 0.0) x2 = 0.0;
            if (!feasible(x1, x2)) continue;
            const bool seen = std::any_of(report.vertices.begin(), report.vertices.end(), [&](const auto& v) {
                return std::abs(v[0] - x1) <= 1e-9 * (1 + std::abs(x1)) && std::abs(v[1] - x2) <= 1e-9 * (1 + std::abs(x2));
            });
            if (!seen) report.vertices.push_back({x1, x2});
        }
    }
    std::sort(report.vertices.begin(), report.vertices.end());

    if (lp.c[1] != 0.0) report.isoquant_slope = -lp.c[0] / lp.c[1];

    LpSolution& sol = report.solution;
    if (report.vertices.empty()) {
        sol.status = Status::Infeasible;
        sol.message = "feasible region is empty";
        return report;
    }

    // Direction of optimisation.
    const double dir = lp.sense == Sense::Min ? -1.0 : 1.0;
    const double grad1 = dir * lp.c[0];
    const double grad2 = dir * lp.c[1];

    // The feasible region is pointed, so it is unbounded in an improving
    // direction iff one of the extreme rays of its recession cone improves z.
    // Those rays lie along the axes or along restriction boundaries.
    std::vector<std::array<double, 2>> rays{{1.0, 0.0}, {0.0, 1.0}};
    for (std::size_t i = 0; i < restrictions; ++i) {
        const double len = std::hypot(planes[i].g1, planes[i].g2);
        if (len == 0.0) continue;
        rays.push_back({planes[i].g2 / len, -planes[i].g1 / len});
        rays.push_back({-planes[i].g2 / len, planes[i].g1 / len});
    }
    for (const auto& r : rays) {
        const bool in_cone = std::all_of(planes.begin(), planes.end(),
                                         [&](const HalfPlane& p) { return p.g1 * r[0] + p.g2 * r[1] <= 1e-12; });
        if (in_cone && grad1 * r[0] + grad2 * r[1] > 1e-12) {
            sol.status = Status::Unbounded;
            sol.message = "feasible region is unbounded in the direction of optimisation";
            sol.x = {report.vertices.front()[0], report.vertices.front()[1]};
            sol.z = lp.objective(sol.x);
            return report;
        }
    }

    double best = 0.0;
    bool first = true;
    for (const auto& v : report.vertices) {
        const double val = dir * lp.objective({v[0], v[1]});
        if (first || val > best) best = val;
        first = false;
    }
    for (const auto& v : report.vertices)
        if (dir * lp.objective({v[0], v[1]}) >= best - 1e-9 * (1.0 + std::abs(best))) report.optimal_vertices.push_back(v);

    sol.status = Status::Optimal;
    sol.x = {report.optimal_vertices.front()[0], report.optimal_vertices.front()[1]};
    sol.z = lp.objective(sol.x);
    for (std::size_t i = 0; i < restrictions; ++i)
        sol.slacks.push_back(planes[i].h - (planes[i].g1 * sol.x[0] + planes[i].g2 * sol.x[1]));
    return report;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Unbounded: return "unbounded";
        case Status::Infeasible: return "infeasible";
        case Status::Unsupported: return "unsupported";
    }
    return "?";
}

}  // namespace qecon::simplex
