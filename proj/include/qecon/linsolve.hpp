#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qecon/linalg.hpp"

namespace qecon::linsolve {

using linalg::Matrix;
using linalg::Vector;

// Entries with magnitude at or below this are treated as structural zeros when
// searching for a pivot.
inline constexpr double kPivotThreshold = 1e-10;

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    // Product of the pivots used for scaling times (-1)^(row swaps). For a
    // square input, det(input) = det_factor * det(reduced), and det(reduced)
    // is 1 at full rank and 0 otherwise.
    double det_factor = 1.0;
};

/// Gauss-Jordan elimination with partial pivoting (largest magnitude, lowest
/// row index on ties).
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

struct LinearSystem {
    LinearSystem(Matrix a, Vector b);

    Matrix a;
    Vector b;
};

enum class SolutionKind { None, Unique, Multiple };

struct SolutionSet {
    SolutionKind kind = SolutionKind::None;
    std::optional<Vector> particular;
    // Basis of the homogeneous solutions; each entry is 1 at its free column.
    std::vector<Vector> free_directions;
    std::size_t rank_a = 0;
    std::size_t rank_ab = 0;
};

SolutionSet solve(const LinearSystem& sys);

double determinant(const Matrix& a);
bool is_singular(double det);

/// Throws SingularMatrix when det(a) vanishes within kZeroTolerance.
Matrix inverse(const Matrix& a);

struct EigenPair {
    double value;
    Vector vector;  // unit length
};

/// Eigenpairs of a symmetric matrix with n <= 3, sorted by ascending
/// eigenvalue. Repeated eigenvalues appear once per multiplicity with
/// mutually orthogonal eigenvectors.
std::vector<EigenPair> eigen_sym(const Matrix& a);

const char* to_string(SolutionKind kind);

}  // namespace qecon::linsolve
