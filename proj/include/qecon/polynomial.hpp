#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qecon/expr.hpp"

namespace qecon::calculus {

/// Real polynomial with coefficients in ascending order: a_0 + a_1 x + ...
/// Trailing zero coefficients are trimmed; the zero polynomial has none.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending);

    static Polynomial constant(double c);
    static Polynomial monomial(double coeff, int degree);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<double>& coefficients() const noexcept { return c_; }
    double coeff(int k) const noexcept { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }

    double operator()(double x) const;
    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& a);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> c_;
};

struct PolyDivision {
    Polynomial quotient;
    Polynomial remainder;
};

/// num = quotient * den + remainder, deg(remainder) < deg(den).
PolyDivision poly_divide(const Polynomial& num, const Polynomial& den);

/// Coefficients when `e` is a polynomial in x (non-negative integer powers
/// of polynomial subterms, sums, products, constant divisors).
std::optional<Polynomial> as_polynomial(const Expr& e);

struct Rational {
    Polynomial num;
    Polynomial den;
};

/// Numerator and denominator when `e` is a ratio of polynomials (or a
/// polynomial, with denominator 1). Common factors are not cancelled.
std::optional<Rational> as_rational(const Expr& e);

Expr to_expr(const Polynomial& p);

/// Distinct real roots in [lo, hi], ascending. Multiple roots are reported
/// once. The zero polynomial yields an empty list.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi);

/// All distinct real roots, searched within the Cauchy bound.
std::vector<double> real_roots(const Polynomial& p);

}  // namespace qecon::calculus
