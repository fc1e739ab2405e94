#include "qecon/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "qecon/error.hpp"

namespace qecon::calculus {

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(double coeff, int degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> c = a.c_;
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
}

PolyDivision poly_divide(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw InvalidInput("polynomial division by the zero polynomial");
    const int dn = den.degree();
    std::vector<double> r = num.coefficients();
    if (num.degree() < dn) return {Polynomial{}, num};

    std::vector<double> q(static_cast<std::size_t>(num.degree() - dn) + 1, 0.0);
    double scale = 0.0;
    for (double v : r) scale = std::max(scale, std::abs(v));
    for (int k = num.degree(); k >= dn; --k) {
        const double f = r[k] / den.leading();
        q[k - dn] = f;
        for (int j = 0; j <= dn; ++j) r[k - dn + j] -= f * den.coeff(j);
        r[k] = 0.0;
    }
    for (double& v : r)
        if (std::abs(v) <= 1e-13 * scale) v = 0.0;
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

std::optional<Polynomial> as_polynomial(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Constant: return Polynomial::constant(e.value());
        case NodeKind::Variable: return Polynomial::monomial(1.0, 1);
        case NodeKind::Sum:
        case NodeKind::Product: {
            auto a = as_polynomial(e.lhs());
            if (!a) return std::nullopt;
            auto b = as_polynomial(e.rhs());
            if (!b) return std::nullopt;
            return e.kind() == NodeKind::Sum ? *a + *b : *a * *b;
        }
        case NodeKind::Negation: {
            auto a = as_polynomial(e.lhs());
            if (!a) return std::nullopt;
            return -1.0 * *a;
        }
        case NodeKind::Quotient: {
            const Expr d = e.rhs();
            if (!d.is_constant() || d.value() == 0.0) return std::nullopt;
            auto a = as_polynomial(e.lhs());
            if (!a) return std::nullopt;
            return (1.0 / d.value()) * *a;
        }
        case NodeKind::Power: {
            const Expr ex = e.rhs();
            if (!ex.is_constant()) return std::nullopt;
            const double n = ex.value();
            if (n < 0.0 || n > 64.0 || std::floor(n) != n) return std::nullopt;
            auto base = as_polynomial(e.lhs());
            if (!base) return std::nullopt;
            Polynomial r = Polynomial::constant(1.0);
            for (int k = 0; k < static_cast<int>(n); ++k) r = r * *base;
            return r;
        }
        default: return std::nullopt;
    }
}

std::optional<Rational> as_rational(const Expr& e) {
    if (auto p = as_polynomial(e)) return Rational{*p, Polynomial::constant(1.0)};
    switch (e.kind()) {
        case NodeKind::Sum:
        case NodeKind::Product:
        case NodeKind::Quotient: {
            auto a = as_rational(e.lhs());
            if (!a) return std::nullopt;
            auto b = as_rational(e.rhs());
            if (!b) return std::nullopt;
            if (e.kind() == NodeKind::Product) return Rational{a->num * b->num, a->den * b->den};
            if (e.kind() == NodeKind::Quotient) {
                if (b->num.is_zero()) return std::nullopt;
                return Rational{a->num * b->den, a->den * b->num};
            }
            if (a->den == b->den) return Rational{a->num + b->num, a->den};
            return Rational{a->num * b->den + b->num * a->den, a->den * b->den};
        }
        case NodeKind::Negation: {
            auto a = as_rational(e.lhs());
            if (!a) return std::nullopt;
            return Rational{-1.0 * a->num, a->den};
        }
        case NodeKind::Power: {
            const Expr ex = e.rhs();
            if (!ex.is_constant()) return std::nullopt;
            const double n = ex.value();
            if (std::abs(n) > 64.0 || std::floor(n) != n) return std::nullopt;
            auto base = as_rational(e.lhs());
            if (!base) return std::nullopt;
            Rational r{Polynomial::constant(1.0), Polynomial::constant(1.0)};
            for (int k = 0; k < static_cast<int>(std::abs(n)); ++k) {
                r.num = r.num * base->num;
                r.den = r.den * base->den;
            }
            if (n < 0.0) {
                if (r.num.is_zero()) return std::nullopt;
                std::swap(r.num, r.den);
            }
            return r;
        }
        default: return std::nullopt;
    }
}

Expr to_expr(const Polynomial& p) {
    if (p.is_zero()) return Expr::constant(0.0);
    Expr out;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const double a = p.coeff(k);
        if (a == 0.0) continue;
        Expr mono = k == 0   ? Expr::constant(std::abs(a))
                    : k == 1 ? Expr::variable()
                             : Expr::power(Expr::variable(), Expr::constant(k));
        if (k > 0 && std::abs(a) != 1.0) mono = Expr::constant(std::abs(a)) * mono;
        if (first) {
            out = a < 0.0 ? (k == 0 ? Expr::constant(a) : -mono) : mono;
            first = false;
        } else {
            out = a < 0.0 ? out - mono : out + mono;
        }
    }
    return out;
}

namespace {

// |p(x)| small against the magnitude of its terms at x.
bool near_zero(const Polynomial& p, double x) {
    double scale = 0.0;
    double xp = 1.0;
    for (double a : p.coefficients()) {
        scale += std::abs(a) * xp;
        xp *= std::abs(x);
    }
    return std::abs(p(x)) <= 1e-10 * scale;
}

double bisect(const Polynomial& p, double a, double b) {
    double fa = p(a);
    for (int i = 0; i < 300; ++i) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = p(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

void merge_sorted(std::vector<double>& roots) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || std::abs(r - out.back()) > 1e-9 * (1.0 + std::abs(r))) out.push_back(r);
    roots = std::move(out);
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    std::vector<double> roots;
    const auto keep = [&](double r) {
        if (r >= lo && r <= hi) roots.push_back(r);
    };
    if (p.degree() <= 0) return roots;
    if (p.degree() == 1) {
        keep(-p.coeff(0) / p.coeff(1));
        return roots;
    }
    if (p.degree() == 2) {
        const double a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        const double disc = b * b - 4.0 * a * c;
        if (std::abs(disc) <= 1e-14 * (b * b + std::abs(4.0 * a * c))) {
            keep(-b / (2.0 * a));
        } else if (disc > 0.0) {
            // Numerically stable pair.
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            keep(q / a);
            if (q != 0.0) keep(c / q);
        }
        merge_sorted(roots);
        return roots;
    }

    std::vector<double> pts{lo};
    for (double c : real_roots(p.derivative(), lo, hi))
        if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);

    for (double t : pts)
        if (near_zero(p, t)) roots.push_back(t);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double fa = p(pts[i]), fb = p(pts[i + 1]);
        if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
        roots.push_back(bisect(p, pts[i], pts[i + 1]));
    }
    merge_sorted(roots);
    return roots;
}

std::vector<double> real_roots(const Polynomial& p) {
    if (p.degree() <= 0) return {};
    double bound = 0.0;
    for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, std::abs(p.coeff(k) / p.leading()));
    bound += 1.0;
    return real_roots(p, -bound, bound);
}

}  // namespace qecon::calculus
