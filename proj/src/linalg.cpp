#include "qecon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qecon/error.hpp"

namespace qecon::linalg {

Vector::Vector(std::vector<double> entries, Orientation orientation)
    : entries_(std::move(entries)), orientation_(orientation) {
    if (entries_.empty()) throw InvalidInput("vector must have at least one entry");
}

Vector::Vector(std::initializer_list<double> entries, Orientation orientation)
    : Vector(std::vector<double>(entries), orientation) {}

Vector Vector::zero(std::size_t n, Orientation orientation) {
    return Vector(std::vector<double>(n, 0.0), orientation);
}

Vector Vector::unit(std::size_t n, std::size_t k, Orientation orientation) {
    if (k >= n) throw InvalidInput("unit vector index out of range");
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    return Vector(std::move(e), orientation);
}

Vector Vector::transposed() const {
    Vector t = *this;
    t.orientation_ = is_row() ? Orientation::Column : Orientation::Row;
    return t;
}

bool Vector::is_zero(double tolerance) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [tolerance](double v) { return std::abs(v) <= tolerance; });
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> r;
    for (const auto& row : rows) r.emplace_back(row);
    *this = from_rows(r);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw InvalidInput("matrix dimensions must be positive");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw DimensionMismatch("row " + std::to_string(i + 1) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(m.cols_));
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Vector Matrix::row(std::size_t i) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return Vector(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(cols_)), Orientation::Row);
}

Vector Matrix::col(std::size_t j) const {
    std::vector<double> e(rows_);
    for (std::size_t i = 0; i < rows_; ++i) e[i] = (*this)(i, j);
    return Vector(std::move(e), Orientation::Column);
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_symmetric(double tolerance) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tolerance) return false;
    return true;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Vector linear_combination(std::span<const double> coeffs, std::span<const Vector> vectors) {
    if (vectors.empty()) throw InvalidInput("linear combination needs at least one term");
    if (coeffs.size() != vectors.size())
        throw DimensionMismatch("linear combination: " + std::to_string(coeffs.size()) +
                                " coefficients for " + std::to_string(vectors.size()) + " vectors");
    const std::size_t n = vectors.front().size();
    const Orientation o = vectors.front().orientation();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const Vector& v = vectors[k];
        if (v.size() != n) throw DimensionMismatch("linear combination: vectors differ in dimension");
        if (v.orientation() != o) throw DimensionMismatch("linear combination: mixed row and column vectors");
        for (std::size_t i = 0; i < n; ++i) out[i] += coeffs[k] * v[i];
    }
    return Vector(std::move(out), o);
}

double inner(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("scalar product of vectors with dimensions " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dot(const Vector& a, const Vector& b) {
    if (!a.is_row() || b.is_row())
        throw DimensionMismatch("dot expects a row vector times a column vector; use inner() otherwise");
    return inner(a, b);
}

bool orthogonal(const Vector& a, const Vector& b, double tolerance) {
    return std::abs(inner(a, b)) <= tolerance;
}

double norm(const Vector& a) {
    // Scaled to avoid overflow for large entries.
    double scale = 0.0;
    for (double v : a.entries()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : a.entries()) s += (v / scale) * (v / scale);
    return scale * std::sqrt(s);
}

Vector normalized(const Vector& a) {
    const double len = norm(a);
    if (len == 0.0) throw InvalidInput("cannot normalise the zero vector");
    return (1.0 / len) * a;
}

double angle(const Vector& a, const Vector& b) {
    if (norm(a) == 0.0 || norm(b) == 0.0) throw InvalidInput("angle is undefined for a zero vector");
    const double c = inner(normalized(a), normalized(b));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Matrix mat_combine(double alpha, const Matrix& a, double beta, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("cannot combine matrices of format " + describe_format(a) + " and " +
                                describe_format(b));
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = alpha * a(i, j) + beta * b(i, j);
    return c;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("cannot multiply " + describe_format(a) + " by " + describe_format(b));
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size())
        throw DimensionMismatch("cannot apply " + describe_format(a) + " to a vector of dimension " +
                                std::to_string(x.size()));
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return Vector(std::move(y), Orientation::Column);
}

Vector operator+(const Vector& a, const Vector& b) {
    const double c[] = {1.0, 1.0};
    const Vector v[] = {a, b};
    return linear_combination(c, v);
}

Vector operator-(const Vector& a, const Vector& b) {
    const double c[] = {1.0, -1.0};
    const Vector v[] = {a, b};
    return linear_combination(c, v);
}

Vector operator*(double lambda, const Vector& a) {
    const double c[] = {lambda};
    return linear_combination(c, std::span<const Vector>(&a, 1));
}

Matrix operator+(const Matrix& a, const Matrix& b) { return mat_combine(1.0, a, 1.0, b); }
Matrix operator-(const Matrix& a, const Matrix& b) { return mat_combine(1.0, a, -1.0, b); }
Matrix operator*(double lambda, const Matrix& a) { return mat_combine(lambda, a, 0.0, a); }
Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
Vector operator*(const Matrix& a, const Vector& x) { return mat_vec(a, x); }

std::string describe_format(const Matrix& m) {
    return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
}

}  // namespace qecon::linalg
