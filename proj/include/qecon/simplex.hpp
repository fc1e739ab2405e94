#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qecon/linalg.hpp"

namespace qecon::simplex {

enum class Sense { Max, Min };
enum class Relation { LessEqual, GreaterEqual };

/// Linear program  max|min z = c^T x + d  subject to  a_i^T x (<=|>=) b_i,  x >= 0.
struct LinearProgram {
    Sense sense = Sense::Max;
    std::vector<double> c;
    double d = 0.0;
    std::vector<std::vector<double>> a;  // m rows of n coefficients; m may be 0
    std::vector<double> b;
    // Per-constraint relation; empty means every row is "<=".
    std::vector<Relation> relations;
    std::vector<std::string> names;

    std::size_t variables() const noexcept { return c.size(); }
    std::size_t constraints() const noexcept { return b.size(); }
    Relation relation(std::size_t i) const { return relations.empty() ? Relation::LessEqual : relations[i]; }

    /// Throws DimensionMismatch on inconsistent shapes.
    void validate() const;
    double objective(const std::vector<double>& x) const;
};

/// Simplex tableau of a canonical maximum problem, laid out as
/// [ z | x_1..x_n | s_1..s_m | RHS ] with 1 + m rows (row 0 is the
/// objective row).
struct SimplexTableau {
    linalg::Matrix grid;
    // basis[i] is the tableau column whose unit vector sits in row i.
    // Column 0 is z, columns 1..n are x, n+1..n+m are the slacks.
    std::vector<std::size_t> basis;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t iteration = 0;

    std::size_t rhs_col() const noexcept { return 1 + n + m; }
    double rhs(std::size_t row) const { return grid(row, rhs_col()); }
    double objective_value() const { return rhs(0); }
    std::string variable_name(std::size_t col) const;
};

enum class Status { Optimal, Unbounded, Infeasible, Unsupported };

struct LpSolution {
    Status status = Status::Unsupported;
    std::vector<double> x;
    double z = 0.0;
    std::vector<double> slacks;
    std::size_t iterations = 0;
    std::string message;
    // Tableau after canonicalisation and after each pivot (only when traced).
    std::vector<SimplexTableau> trace;
};

/// Rewrites min problems as max problems (objective and offset negated) and
/// every ">=" row as a "<=" row with flipped signs.
LinearProgram negate_to_max(const LinearProgram& lp);

/// Initial tableau with basis {z, s_1..s_m}. Throws Unsupported for min
/// problems, ">=" rows, or negative capacities.
SimplexTableau canonicalize(const LinearProgram& lp);

/// One pivot on entry (row, col); row >= 1, 1 <= col <= n + m.
SimplexTableau pivot(const SimplexTableau& t, std::size_t row, std::size_t col);

std::size_t iteration_cap(const LinearProgram& lp);

/// Dantzig's method with smallest-index tie breaking in both the column and
/// ratio choices. Forms that would need an artificial starting basis are
/// returned with status Unsupported. Exceeding iteration_cap throws
/// NumericalFailure.
LpSolution solve_simplex(const LinearProgram& lp, bool keep_trace = false);

struct VertexReport {
    LpSolution solution;
    std::vector<std::array<double, 2>> vertices;  // feasible region corners
    std::vector<std::array<double, 2>> optimal_vertices;  // two entries when an edge is optimal
    std::optional<double> isoquant_slope;  // -c1/c2 for the (0,0)-isoquant; absent when c2 = 0
};

/// Graphical method for two variables: enumerates all corners of the feasible
/// region and evaluates z on each. Independent of the tableau code.
VertexReport vertex_oracle(const LinearProgram& lp);

const char* to_string(Status s);

}  // namespace qecon::simplex
