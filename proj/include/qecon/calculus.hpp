#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qecon/expr.hpp"
#include "qecon/polynomial.hpp"

namespace qecon::calculus {

struct Tangent {
    double slope;
    double intercept;
};

/// y = f(x0) + f'(x0)(x - x0) as slope and intercept.
Tangent tangent_line(const Expr& e, double x0);

/// x f'(x)/f(x); requires x > 0 and f(x) > 0, else DomainError.
double elasticity(const Expr& e, double x);

enum class ElasticityClass { Inelastic, UnitElastic, Elastic };

/// |eps| < 1, |eps| = 1 within 1e-9, |eps| > 1.
ElasticityClass classify_elasticity(double eps);
const char* to_string(ElasticityClass c);

/// x d/dx[x f'(x)/f(x)], same preconditions as elasticity.
double second_elasticity(const Expr& e, double x);

struct RootOptions {
    double tol = 1e-10;
    int grid = 1024;  // sign-scan cells
};

/// Real roots in [lo, hi], ascending. Polynomials up to degree 2 use closed
/// forms; everything else is scanned on a grid, bisected and Newton-polished.
std::vector<double> roots(const Expr& e, double lo, double hi, RootOptions opt = {});

/// A primitive (the constant of integration is omitted), or nothing when
/// `e` is not a linear combination of the supported table forms.
std::optional<Expr> antiderivative(const Expr& e);

/// Definite integral. Uses the primitive when one exists, otherwise
/// adaptive Simpson quadrature to 1e-10 (absolute or relative). Limits may
/// be +-infinity for power laws c*x^alpha only. Throws NumericalFailure on
/// poles inside the interval and divergent improper integrals.
double integrate(const Expr& e, double a, double b);

// --- Curve sketching ----------------------------------------------------

enum class Symmetry { Even, Odd, None };
enum class CurveClass { Polynomial, ProperRational, ImproperRational };
enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
    double x;
    double y;
    ExtremumKind kind;
};

struct Interval {
    double lo;
    double hi;
    bool rising;  // monotone: increasing; curvature: convex
};

struct Asymptote {
    enum class Kind { Vertical, Horizontal, Oblique } kind;
    double slope = 0.0;      // horizontal/oblique
    double intercept = 0.0;  // horizontal/oblique
    double x = 0.0;          // vertical
};

struct CurveReport {
    CurveClass curve_class = CurveClass::Polynomial;
    Rational rational;
    std::vector<double> excluded;  // poles and removable gaps in the window
    Symmetry symmetry = Symmetry::None;
    std::vector<double> roots;
    std::optional<double> y_intercept;
    std::vector<Extremum> extrema;
    std::vector<double> inflections;
    std::vector<Interval> monotone;   // rising = increasing
    std::vector<Interval> curvature;  // rising = convex
    std::vector<Asymptote> asymptotes;
    // Least and greatest sampled value over the window.
    double range_min = 0.0;
    double range_max = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// Curve sketch of a polynomial or rational function over [lo, hi].
/// Throws Unsupported for other expressions.
CurveReport curve_report(const Expr& e, double lo, double hi);

const char* to_string(Symmetry s);
const char* to_string(CurveClass c);
const char* to_string(ExtremumKind k);

}  // namespace qecon::calculus
