#include "qecon/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qecon/error.hpp"
#include "qecon/matrix_io.hpp"

namespace qecon::calculus {
namespace {

const Expr kX = Expr::variable();

void require_elasticity_domain(const Expr& e, double x) {
    if (!(x > 0.0)) throw DomainError("elasticity needs x > 0, got " + io::format_number(x));
    const double f = e(x);
    if (!(f > 0.0)) throw DomainError("elasticity needs f(x) > 0, got f = " + io::format_number(f));
}

std::optional<double> try_eval(const Expr& e, double x) {
    try {
        return e(x);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

}  // namespace

Tangent tangent_line(const Expr& e, double x0) {
    const double f = e(x0);
    const double s = differentiate(e)(x0);
    return {s, f - s * x0};
}

double elasticity(const Expr& e, double x) {
    require_elasticity_domain(e, x);
    return x * differentiate(e)(x) / e(x);
}

ElasticityClass classify_elasticity(double eps) {
    const double m = std::abs(eps);
    if (std::abs(m - 1.0) <= 1e-9) return ElasticityClass::UnitElastic;
    return m < 1.0 ? ElasticityClass::Inelastic : ElasticityClass::Elastic;
}

const char* to_string(ElasticityClass c) {
    switch (c) {
        case ElasticityClass::Inelastic: return "inelastic";
        case ElasticityClass::UnitElastic: return "unit elastic";
        case ElasticityClass::Elastic: return "elastic";
    }
    return "?";
}

double second_elasticity(const Expr& e, double x) {
    require_elasticity_domain(e, x);
    const Expr eps = simplify(kX * differentiate(e) / e);
    return x * differentiate(eps)(x);
}

// --- Roots ---------------------------------------------------------------

std::vector<double> roots(const Expr& e, double lo, double hi, RootOptions opt) {
    if (!(lo < hi)) throw InvalidInput("root window needs lo < hi");
    if (opt.grid < 1 || !(opt.tol > 0.0)) throw InvalidInput("root search needs grid >= 1 and tol > 0");

    if (auto p = as_polynomial(e); p && p->degree() <= 2) return real_roots(*p, lo, hi);

    const int n = opt.grid;
    std::vector<double> xs(n + 1);
    std::vector<std::optional<double>> fs(n + 1);
    double fmax = 0.0;
    bool all_zero = true;
    for (int i = 0; i <= n; ++i) {
        xs[i] = i == n ? hi : lo + (hi - lo) * i / n;
        fs[i] = try_eval(e, xs[i]);
        if (fs[i]) {
            fmax = std::max(fmax, std::abs(*fs[i]));
            if (*fs[i] != 0.0) all_zero = false;
        }
    }
    if (all_zero) return {};

    const Expr de = differentiate(e);
    std::vector<double> found;
    for (int i = 0; i <= n; ++i)
        if (fs[i] && *fs[i] == 0.0) found.push_back(xs[i]);

    for (int i = 0; i < n; ++i) {
        if (!fs[i] || !fs[i + 1]) continue;
        double fa = *fs[i], fb = *fs[i + 1];
        if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
        double a = xs[i], b = xs[i + 1];
        bool ok = true;
        for (int it = 0; it < 400 && b - a > opt.tol; ++it) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;
            const auto fm = try_eval(e, m);
            if (!fm) {
                ok = false;
                break;
            }
            if (*fm == 0.0) {
                a = b = m;
                break;
            }
            if ((*fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = *fm;
            } else {
                b = m;
            }
        }
        if (!ok) continue;
        double x = 0.5 * (a + b);
        auto fx = try_eval(e, x);
        if (!fx) continue;
        // One Newton step, kept only if it improves the residual inside the bracket.
        if (const auto d = try_eval(de, x); d && *d != 0.0) {
            const double xn = x - *fx / *d;
            const auto fn = try_eval(e, xn);
            if (fn && xn >= a - opt.tol && xn <= b + opt.tol && std::abs(*fn) < std::abs(*fx)) {
                x = xn;
                fx = fn;
            }
        }
        // Sign changes across poles leave a large residual.
        if (std::abs(*fx) <= 1e-8 * (1.0 + fmax)) found.push_back(x);
    }

    std::sort(found.begin(), found.end());
    std::vector<double> out;
    for (double r : found)
        if (out.empty() || r - out.back() > 10.0 * opt.tol) out.push_back(r);
    return out;
}

// --- Antiderivatives -------------------------------------------------------

namespace {

// e = c * rest with c a constant factor pulled off the top of the tree.
std::pair<double, Expr> split_constant(const Expr& e) {
    if (e.is_constant()) return {e.value(), Expr::constant(1.0)};
    if (e.kind() == NodeKind::Negation) {
        auto [c, r] = split_constant(e.lhs());
        return {-c, r};
    }
    if (e.kind() == NodeKind::Product && e.lhs().is_constant()) {
        auto [c, r] = split_constant(e.rhs());
        return {e.lhs().value() * c, r};
    }
    if (e.kind() == NodeKind::Quotient && e.rhs().is_constant() && e.rhs().value() != 0.0) {
        auto [c, r] = split_constant(e.lhs());
        return {c / e.rhs().value(), r};
    }
    return {1.0, e};
}

// a x + b with a != 0.
std::optional<std::pair<double, double>> as_linear(const Expr& e) {
    const auto p = as_polynomial(e);
    if (!p || p->degree() != 1) return std::nullopt;
    return std::make_pair(p->coeff(1), p->coeff(0));
}

Expr scaled(double c, const Expr& e) {
    if (c == 1.0) return e;
    return simplify(Expr::constant(c) * e);
}

std::optional<Expr> primitive(const Expr& e) {
    if (auto p = as_polynomial(e)) {
        std::vector<double> c(p->coefficients().size() + 1, 0.0);
        for (std::size_t k = 0; k < p->coefficients().size(); ++k)
            c[k + 1] = p->coefficients()[k] / static_cast<double>(k + 1);
        return to_expr(Polynomial(std::move(c)));
    }

    switch (e.kind()) {
        case NodeKind::Sum: {
            auto a = primitive(e.lhs());
            if (!a) return std::nullopt;
            auto b = primitive(e.rhs());
            if (!b) return std::nullopt;
            return *a + *b;
        }
        case NodeKind::Negation: {
            auto a = primitive(e.lhs());
            if (!a) return std::nullopt;
            return -*a;
        }
        case NodeKind::Product:
            if (e.lhs().is_constant()) {
                auto a = primitive(e.rhs());
                if (!a) return std::nullopt;
                return scaled(e.lhs().value(), *a);
            }
            if (e.rhs().is_constant()) {
                auto a = primitive(e.lhs());
                if (!a) return std::nullopt;
                return scaled(e.rhs().value(), *a);
            }
            return std::nullopt;
        case NodeKind::Quotient: {
            const Expr u = e.lhs(), v = e.rhs();
            if (v.is_constant()) {
                if (v.value() == 0.0) return std::nullopt;
                auto a = primitive(u);
                if (!a) return std::nullopt;
                return scaled(1.0 / v.value(), *a);
            }
            // Logarithmic integration: u = k v'.
            const auto [cu, ru] = split_constant(u);
            const auto [cd, rd] = split_constant(differentiate(v));
            if (cd != 0.0 && structurally_equal(ru, rd)) return scaled(cu / cd, Expr::ln(Expr::abs(v)));
            return std::nullopt;
        }
        case NodeKind::Power: {
            const Expr base = e.lhs(), ex = e.rhs();
            if (ex.is_constant()) {
                const auto lin = as_linear(base);
                if (!lin) return std::nullopt;
                const double alpha = ex.value();
                if (alpha == -1.0) return scaled(1.0 / lin->first, Expr::ln(Expr::abs(base)));
                return scaled(1.0 / (lin->first * (alpha + 1.0)), Expr::power(base, Expr::constant(alpha + 1.0)));
            }
            if (base.is_constant()) {
                const double c = base.value();
                const auto lin = as_linear(ex);
                if (!lin || !(c > 0.0) || c == 1.0) return std::nullopt;
                return scaled(1.0 / (lin->first * std::log(c)), e);
            }
            return std::nullopt;
        }
        case NodeKind::Exp: {
            const auto lin = as_linear(e.lhs());
            if (!lin) return std::nullopt;
            return scaled(1.0 / lin->first, e);
        }
        default: return std::nullopt;
    }
}

// c * x^alpha
std::optional<std::pair<double, double>> power_law(const Expr& e) {
    const auto [c, rest] = split_constant(e);
    if (rest.is_constant()) return std::make_pair(c * rest.value(), 0.0);
    if (rest.kind() == NodeKind::Variable) return std::make_pair(c, 1.0);
    if (rest.kind() == NodeKind::Power && rest.lhs().kind() == NodeKind::Variable && rest.rhs().is_constant())
        return std::make_pair(c, rest.rhs().value());
    if (rest.kind() == NodeKind::Quotient && rest.lhs().is_constant()) {
        const auto inner = power_law(rest.rhs());
        if (!inner || inner->first == 0.0) return std::nullopt;
        return std::make_pair(c * rest.lhs().value() / inner->first, -inner->second);
    }
    return std::nullopt;
}

double improper_power_law(const Expr& e, double a, double b) {
    const auto pl = power_law(simplify(e));
    if (!pl) throw InvalidInput("infinite limits are supported only for power laws c*x^alpha");
    const auto [c, alpha] = *pl;
    if (c == 0.0) return 0.0;
    const bool upper = std::isinf(b);
    const double finite = upper ? a : b;
    if (upper ? !(finite > 0.0) : !(finite < 0.0))
        throw NumericalFailure("improper integral diverges: the range contains x = 0");
    if (!(alpha < -1.0)) throw NumericalFailure("improper integral diverges: x^alpha needs alpha < -1 toward infinity");
    if (!upper && std::floor(alpha) != alpha)
        throw DomainError("x^alpha is undefined for negative x with non-integer alpha");
    const double tail = c * std::pow(finite, alpha + 1.0) / (alpha + 1.0);
    return upper ? -tail : tail;
}

class Simpson {
public:
    explicit Simpson(const Expr& e) : e_(e) {}

    double f(double x) {
        if (++evaluations_ > 5'000'000) throw NumericalFailure("quadrature exceeded its evaluation budget");
        try {
            return e_(x);
        } catch (const DomainError& err) {
            throw NumericalFailure(std::string("integrand undefined inside the interval: ") + err.what());
        }
    }

    double run(double a, double b) {
        constexpr int panels = 16;
        const double h = (b - a) / panels;
        // Coarse estimate fixes the relative tolerance.
        std::vector<double> fx(2 * panels + 1);
        for (int i = 0; i <= 2 * panels; ++i) fx[i] = f(i == 2 * panels ? b : a + h * i / 2.0);
        double coarse = 0.0;
        for (int i = 0; i < panels; ++i) coarse += h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
        const double tol = std::max(1e-10, 1e-10 * std::abs(coarse));
        double total = 0.0;
        for (int i = 0; i < panels; ++i) {
            const double lo = a + h * i;
            const double hi = i == panels - 1 ? b : a + h * (i + 1);
            const double whole = (hi - lo) / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
            total += step(lo, hi, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], whole, tol / panels, 60);
        }
        return total;
    }

private:
    double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        return step(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    }

    const Expr& e_;
    long evaluations_ = 0;
};

}  // namespace

std::optional<Expr> antiderivative(const Expr& e) { return primitive(simplify(e)); }

double integrate(const Expr& e, double a, double b) {
    if (std::isnan(a) || std::isnan(b)) throw InvalidInput("integration limits must be numbers");
    if (a == b) return 0.0;
    if (a > b) return -integrate(e, b, a);
    if (std::isinf(a) && std::isinf(b)) throw InvalidInput("at most one integration limit may be infinite");
    if (std::isinf(a) || std::isinf(b)) return improper_power_law(e, a, b);

    const Expr s = simplify(e);
    if (auto r = as_rational(s); r && r->den.degree() > 0) {
        const auto poles = real_roots(r->den, a, b);
        if (!poles.empty())
            throw NumericalFailure("pole detected at x = " + io::format_number(poles.front()) +
                                   " inside the integration interval");
    }

    if (const auto F = primitive(s)) {
        constexpr int samples = 256;
        for (int i = 1; i < samples; ++i) {
            const double x = a + (b - a) * i / samples;
            try {
                s(x);
            } catch (const DomainError& err) {
                throw NumericalFailure(std::string("integrand undefined inside the interval: ") + err.what());
            }
        }
        try {
            return (*F)(b) - (*F)(a);
        } catch (const DomainError& err) {
            throw NumericalFailure(std::string("integral diverges at an endpoint: ") + err.what());
        }
    }
    return Simpson(s).run(a, b);
}

// --- Curve sketching ---------------------------------------------------------

namespace {

Symmetry parity(const Polynomial& p) {
    bool has_even = false, has_odd = false;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k) == 0.0) continue;
        (k % 2 == 0 ? has_even : has_odd) = true;
    }
    if (!has_odd) return Symmetry::Even;
    if (!has_even) return Symmetry::Odd;
    return Symmetry::None;
}

int sign(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

double probe_step(double c, const std::vector<double>& neighbours) {
    double d = 1e-6 * (1.0 + std::abs(c));
    for (double n : neighbours)
        if (n != c) d = std::min(d, 0.25 * std::abs(n - c));
    return d;
}

bool contains(const std::vector<double>& v, double x) {
    return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(x - y) <= 1e-9 * (1.0 + std::abs(x)); });
}

std::vector<Interval> sign_intervals(const std::vector<double>& breaks, const std::vector<double>& poles,
                                     const std::function<int(double)>& sgn) {
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i], hi = breaks[i + 1];
        if (!(hi > lo)) continue;
        const int s = sgn(0.5 * (lo + hi));
        if (s == 0) continue;
        const bool rising = s > 0;
        if (!out.empty() && out.back().hi == lo && out.back().rising == rising && !contains(poles, lo))
            out.back().hi = hi;
        else
            out.push_back({lo, hi, rising});
    }
    return out;
}

}  // namespace

CurveReport curve_report(const Expr& e, double lo, double hi) {
    if (!(lo < hi)) throw InvalidInput("curve window needs lo < hi");
    auto rat = as_rational(simplify(e));
    if (!rat) throw Unsupported("curve reports need a polynomial or a ratio of polynomials");
    Polynomial n = rat->num, d = rat->den;
    if (d.degree() == 0) {
        n = (1.0 / d.coeff(0)) * n;
        d = Polynomial::constant(1.0);
    }

    CurveReport rep;
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.rational = {n, d};
    rep.curve_class = d.degree() == 0          ? CurveClass::Polynomial
                      : n.degree() < d.degree() ? CurveClass::ProperRational
                                                : CurveClass::ImproperRational;
    const auto f = [&](double x) { return n(x) / d(x); };

    rep.excluded = real_roots(d);
    std::vector<double> poles_in;
    for (double p : rep.excluded)
        if (p >= lo && p <= hi) poles_in.push_back(p);

    if (n.is_zero()) {
        rep.symmetry = Symmetry::Even;
    } else {
        const Symmetry sn = parity(n), sd = parity(d);
        if (sn == Symmetry::None || sd == Symmetry::None)
            rep.symmetry = Symmetry::None;
        else
            rep.symmetry = sn == sd ? Symmetry::Even : Symmetry::Odd;
    }

    for (double r : real_roots(n, lo, hi))
        if (!contains(rep.excluded, r)) rep.roots.push_back(r);
    if (d(0.0) != 0.0) rep.y_intercept = f(0.0);

    // f' = P1 / D^2 and f'' = P2 / D^3.
    const Polynomial p1 = n.derivative() * d - n * d.derivative();
    const Polynomial p2 = p1.derivative() * d - 2.0 * p1 * d.derivative();

    std::vector<double> crit;
    for (double c : real_roots(p1, lo, hi))
        if (!contains(rep.excluded, c)) crit.push_back(c);
    for (double c : crit) {
        const double h = probe_step(c, crit);
        const int left = sign(p1(c - h)), right = sign(p1(c + h));
        if (left < 0 && right > 0) rep.extrema.push_back({c, f(c), ExtremumKind::Minimum});
        if (left > 0 && right < 0) rep.extrema.push_back({c, f(c), ExtremumKind::Maximum});
    }

    std::vector<double> infl;
    for (double c : real_roots(p2, lo, hi))
        if (!contains(rep.excluded, c)) infl.push_back(c);
    const auto curv_sign = [&](double x) { return sign(p2(x)) * sign(d(x)); };
    for (double c : infl) {
        const double h = probe_step(c, infl);
        const int left = curv_sign(c - h), right = curv_sign(c + h);
        if (left != 0 && right != 0 && left != right) rep.inflections.push_back(c);
    }

    const auto breaks_with = [&](const std::vector<double>& pts) {
        std::vector<double> b{lo, hi};
        b.insert(b.end(), pts.begin(), pts.end());
        b.insert(b.end(), poles_in.begin(), poles_in.end());
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    };
    rep.monotone = sign_intervals(breaks_with(crit), poles_in, [&](double x) { return sign(p1(x)); });
    rep.curvature = sign_intervals(breaks_with(infl), poles_in, curv_sign);

    for (double p : rep.excluded) {
        const double scale = std::max(1.0, std::abs(n.leading()) * std::pow(std::abs(p), n.degree()));
        if (std::abs(n(p)) > 1e-9 * scale) {
            Asymptote a{Asymptote::Kind::Vertical};
            a.x = p;
            rep.asymptotes.push_back(a);
        }
    }
    if (rep.curve_class == CurveClass::ProperRational) {
        rep.asymptotes.push_back({Asymptote::Kind::Horizontal, 0.0, 0.0});
    } else if (rep.curve_class == CurveClass::ImproperRational) {
        const auto div = poly_divide(n, d);
        if (div.quotient.degree() == 0)
            rep.asymptotes.push_back({Asymptote::Kind::Horizontal, 0.0, div.quotient.coeff(0)});
        else if (div.quotient.degree() == 1)
            rep.asymptotes.push_back({Asymptote::Kind::Oblique, div.quotient.coeff(1), div.quotient.coeff(0)});
    }

    bool any = false;
    const auto sample = [&](double x) {
        if (d(x) == 0.0) return;
        const double y = f(x);
        if (!std::isfinite(y)) return;
        if (!any || y < rep.range_min) rep.range_min = y;
        if (!any || y > rep.range_max) rep.range_max = y;
        any = true;
    };
    constexpr int samples = 2048;
    for (int i = 0; i <= samples; ++i) sample(i == samples ? hi : lo + (hi - lo) * i / samples);
    for (const auto& x : rep.extrema) sample(x.x);
    return rep;
}

const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::Even: return "even";
        case Symmetry::Odd: return "odd";
        case Symmetry::None: return "none";
    }
    return "?";
}

const char* to_string(CurveClass c) {
    switch (c) {
        case CurveClass::Polynomial: return "polynomial";
        case CurveClass::ProperRational: return "proper rational";
        case CurveClass::ImproperRational: return "improper rational";
    }
    return "?";
}

const char* to_string(ExtremumKind k) { return k == ExtremumKind::Minimum ? "minimum" : "maximum"; }

}  // namespace qecon::calculus
