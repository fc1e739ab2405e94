#include "qecon/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qecon/error.hpp"

namespace qecon::linsolve {

RrefResult rref(const Matrix& m) {
    RrefResult out{m, 0, {}, 1.0};
    Matrix& r = out.reduced;
    const std::size_t rows = r.rows();
    const std::size_t cols = r.cols();

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t best = pivot_row;
        for (std::size_t i = pivot_row + 1; i < rows; ++i)
            if (std::abs(r(i, col)) > std::abs(r(best, col))) best = i;

        if (std::abs(r(best, col)) <= kPivotThreshold) {
            for (std::size_t i = pivot_row; i < rows; ++i) r(i, col) = 0.0;
            continue;
        }
        if (best != pivot_row) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(r(best, j), r(pivot_row, j));
            out.det_factor = -out.det_factor;
        }

        const double pivot = r(pivot_row, col);
        out.det_factor *= pivot;
        for (std::size_t j = col; j < cols; ++j) r(pivot_row, j) /= pivot;
        r(pivot_row, col) = 1.0;

        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row) continue;
            const double f = r(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < cols; ++j) r(i, j) -= f * r(pivot_row, j);
            r(i, col) = 0.0;
        }
        out.pivot_cols.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivot_cols.size();
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

LinearSystem::LinearSystem(Matrix a_, Vector b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != b.size())
        throw DimensionMismatch("coefficient matrix has " + std::to_string(a.rows()) +
                                " rows but the image vector has dimension " + std::to_string(b.size()));
}

SolutionSet solve(const LinearSystem& sys) {
    const std::size_t m = sys.a.rows();
    const std::size_t n = sys.a.cols();

    Matrix aug(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = sys.a(i, j);
        aug(i, n) = sys.b[i];
    }
    const RrefResult red = rref(aug);

    SolutionSet out;
    out.rank_ab = red.rank;
    out.rank_a = static_cast<std::size_t>(
        std::count_if(red.pivot_cols.begin(), red.pivot_cols.end(), [n](std::size_t c) { return c < n; }));
    if (out.rank_a != out.rank_ab) {
        out.kind = SolutionKind::None;
        return out;
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : red.pivot_cols) is_pivot[c] = true;

    std::vector<double> x(n, 0.0);
    for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) x[red.pivot_cols[k]] = red.reduced(k, n);
    out.particular = Vector(std::move(x));

    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<double> dir(n, 0.0);
        dir[f] = 1.0;
        for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) dir[red.pivot_cols[k]] = -red.reduced(k, f);
        out.free_directions.emplace_back(std::move(dir));
    }
    out.kind = out.free_directions.empty() ? SolutionKind::Unique : SolutionKind::Multiple;
    return out;
}

double determinant(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant of non-square matrix " + linalg::describe_format(a));
    switch (a.rows()) {
        case 1:
            return a(0, 0);
        case 2:
            return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        case 3:
            return a(0, 0) * a(1, 1) * a(2, 2) + a(0, 1) * a(1, 2) * a(2, 0) + a(0, 2) * a(1, 0) * a(2, 1) -
                   a(0, 2) * a(1, 1) * a(2, 0) - a(0, 0) * a(1, 2) * a(2, 1) - a(0, 1) * a(1, 0) * a(2, 2);
        default: {
            const RrefResult red = rref(a);
            return red.rank == a.rows() ? red.det_factor : 0.0;
        }
    }
}

bool is_singular(double det) { return std::abs(det) <= linalg::kZeroTolerance; }

Matrix inverse(const Matrix& a) {
    const double det = determinant(a);
    if (is_singular(det))
        throw SingularMatrix("matrix is singular (|det| = " + std::to_string(std::abs(det)) + ")", det);

    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1.0;
    }
    const RrefResult red = rref(aug);
    if (red.rank < n || red.pivot_cols[n - 1] != n - 1)
        throw SingularMatrix("matrix is numerically singular", det);

    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.reduced(i, n + j);
    return inv;
}

namespace {

// det(A - lambda 1) for n <= 3, and its derivative in lambda.
std::pair<double, double> characteristic(const Matrix& a, double lambda) {
    const std::size_t n = a.rows();
    Matrix s = a;
    for (std::size_t i = 0; i < n; ++i) s(i, i) -= lambda;
    const double value = determinant(s);
    // d/dlambda det(A - lambda 1) = -(sum of principal (n-1)-minors of A - lambda 1)
    double deriv = 0.0;
    if (n == 1) {
        deriv = -1.0;
    } else if (n == 2) {
        deriv = -(s(0, 0) + s(1, 1));
    } else {
        deriv = -((s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1)) + (s(0, 0) * s(2, 2) - s(0, 2) * s(2, 0)) +
                  (s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0)));
    }
    return {value, deriv};
}

std::vector<double> characteristic_roots(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return {a(0, 0)};
    if (n == 2) {
        const double mean = 0.5 * (a(0, 0) + a(1, 1));
        const double half_gap = std::hypot(0.5 * (a(0, 0) - a(1, 1)), a(0, 1));
        return {mean - half_gap, mean + half_gap};
    }

    // Trigonometric solution of the depressed cubic; all roots are real for
    // symmetric input.
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double spread = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                          (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * off;
    if (spread == 0.0) return {q, q, q};

    const double p = std::sqrt(spread / 6.0);
    Matrix b = a;
    for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
    b = (1.0 / p) * b;
    const double r = std::clamp(determinant(b) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    std::vector<double> roots{lo, 3.0 * q - hi - lo, hi};

    for (double& lambda : roots) {
        const auto [f, df] = characteristic(a, lambda);
        if (df == 0.0) continue;
        const double candidate = lambda - f / df;
        if (std::abs(characteristic(a, candidate).first) < std::abs(f)) lambda = candidate;
    }
    return roots;
}

// Orthonormal basis of the k-dimensional null space of (A - lambda 1),
// also kept orthogonal to `taken`.
std::vector<Vector> null_basis(const Matrix& a, double lambda, std::size_t k, const std::vector<Vector>& taken) {
    const std::size_t n = a.rows();
    Matrix s = a;
    for (std::size_t i = 0; i < n; ++i) s(i, i) -= lambda;

    auto residual = [](Vector v, const std::vector<Vector>& basis) {
        for (const Vector& q : basis) v = v - linalg::inner(q, v) * q;
        return v;
    };

    std::vector<Vector> row_basis;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(s.row(i).transposed());
    for (std::size_t step = 0; step + k < n; ++step) {
        Vector best = residual(rows[0], row_basis);
        for (std::size_t i = 1; i < n; ++i) {
            Vector cand = residual(rows[i], row_basis);
            if (linalg::norm(cand) > linalg::norm(best)) best = cand;
        }
        if (linalg::norm(best) == 0.0) break;
        row_basis.push_back(linalg::normalized(best));
    }

    std::vector<Vector> against = row_basis;
    against.insert(against.end(), taken.begin(), taken.end());
    std::vector<Vector> out;
    for (std::size_t step = 0; step < k; ++step) {
        Vector best = residual(Vector::unit(n, 0), against);
        for (std::size_t i = 1; i < n; ++i) {
            Vector cand = residual(Vector::unit(n, i), against);
            if (linalg::norm(cand) > linalg::norm(best)) best = cand;
        }
        best = linalg::normalized(best);
        // Deterministic sign: largest-magnitude component positive.
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(best[i]) > std::abs(best[big]) + 1e-12) big = i;
        if (best[big] < 0) best = -1.0 * best;
        against.push_back(best);
        out.push_back(best);
    }
    return out;
}

}  // namespace

std::vector<EigenPair> eigen_sym(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("eigenvalues need a square matrix");
    if (a.rows() > 3) throw Unsupported("eigenvalues are only supported for n <= 3");
    if (!a.is_symmetric()) throw InvalidInput("eigen_sym requires a symmetric matrix");

    std::vector<double> roots = characteristic_roots(a);
    std::sort(roots.begin(), roots.end());
    const double scale = 1.0 + std::max(std::abs(roots.front()), std::abs(roots.back()));

    std::vector<EigenPair> out;
    std::vector<Vector> taken;
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i + 1;
        while (j < roots.size() && roots[j] - roots[i] <= 1e-8 * scale) ++j;
        double mean = 0.0;
        for (std::size_t k = i; k < j; ++k) mean += roots[k];
        mean /= static_cast<double>(j - i);

        for (Vector& v : null_basis(a, mean, j - i, taken)) {
            taken.push_back(v);
            out.push_back({mean, std::move(v)});
        }
        i = j;
    }
    return out;
}

const char* to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::None: return "none";
        case SolutionKind::Unique: return "unique";
        case SolutionKind::Multiple: return "multiple";
    }
    return "?";
}

}  // namespace qecon::linsolve
