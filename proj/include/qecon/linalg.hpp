#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qecon::linalg {

// Tolerance used for "is zero" decisions (singularity, orthogonality, symmetry).
inline constexpr double kZeroTolerance = 1e-9;

enum class Orientation { Column, Row };

/// Real vector with an explicit row/column orientation.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::vector<double> entries, Orientation orientation = Orientation::Column);
    Vector(std::initializer_list<double> entries, Orientation orientation = Orientation::Column);

    static Vector zero(std::size_t n, Orientation orientation = Orientation::Column);
    /// k-th canonical unit vector of dimension n.
    static Vector unit(std::size_t n, std::size_t k, Orientation orientation = Orientation::Column);

    std::size_t size() const noexcept { return entries_.size(); }
    Orientation orientation() const noexcept { return orientation_; }
    bool is_row() const noexcept { return orientation_ == Orientation::Row; }

    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }
    std::span<const double> entries() const noexcept { return entries_; }

    Vector transposed() const;
    bool is_zero(double tolerance = 0.0) const;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> entries_;
    Orientation orientation_ = Orientation::Column;
};

/// Dense m x n real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    /// n x 1 matrix from the entries of `v` (orientation ignored).
    static Matrix column(const Vector& v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;
    bool is_symmetric(double tolerance = kZeroTolerance) const;
    double max_abs() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Componentwise sum of coeffs[i] * vectors[i]. Every vector must share
/// dimension and orientation; the term list must not be empty.
Vector linear_combination(std::span<const double> coeffs, std::span<const Vector> vectors);

/// Euclidean scalar product a^T b for a row vector `a` and a column vector `b`.
double dot(const Vector& a, const Vector& b);
/// Scalar product ignoring orientation (transposes as needed).
double inner(const Vector& a, const Vector& b);
bool orthogonal(const Vector& a, const Vector& b, double tolerance = kZeroTolerance);

double norm(const Vector& a);
Vector normalized(const Vector& a);
/// Angle in [0, pi] between two non-zero vectors.
double angle(const Vector& a, const Vector& b);

Matrix mat_combine(double alpha, const Matrix& a, double beta, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// A x for a column vector x; the result is a column vector.
Vector mat_vec(const Matrix& a, const Vector& x);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double lambda, const Vector& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double lambda, const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

std::string describe_format(const Matrix& m);

}  // namespace qecon::linalg
