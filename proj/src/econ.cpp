#include "qecon/econ.hpp"

#include <cmath>

#include "qecon/error.hpp"
#include "qecon/matrix_io.hpp"

namespace qecon::econ {

using calculus::differentiate;
using calculus::simplify;

namespace {

constexpr int kGrid = 256;

Expr c(double v) { return Expr::constant(v); }

double ratio_elasticity(const Expr& f, double x) { return x * differentiate(f)(x) / f(x); }

}  // namespace

void CostModel::validate() const {
    if (!(a3 > 0.0)) throw InvalidInput("cost model needs a3 > 0");
    if (!(a2 < 0.0)) throw InvalidInput("cost model needs a2 < 0");
    if (!(a1 > 0.0)) throw InvalidInput("cost model needs a1 > 0");
    if (!(a0 >= 0.0)) throw InvalidInput("cost model needs a0 >= 0");
    if (!(a2 * a2 - 3.0 * a3 * a1 < 0.0)) throw InvalidInput("cost model needs a2^2 - 3 a3 a1 < 0");
}

Expr CostModel::variable() const {
    const Expr x = Expr::variable();
    return c(a3) * Expr::power(x, c(3)) + c(a2) * Expr::power(x, c(2)) + c(a1) * x;
}

Expr CostModel::total() const { return variable() + c(a0); }

double CostModel::operator()(double x) const { return ((a3 * x + a2) * x + a1) * x + a0; }

double CostModel::marginal(double x) const { return (3.0 * a3 * x + 2.0 * a2) * x + a1; }

CostAnalysis cost_analysis(const CostModel& k) {
    k.validate();
    CostAnalysis r{};
    r.x_w = -k.a2 / (3.0 * k.a3);
    r.x_g1 = -k.a2 / (2.0 * k.a3);
    r.marginal_min = k.marginal(r.x_w);

    if (k.a0 == 0.0) {
        r.x_g2 = r.x_g1;
        r.mes_coincides = true;
    } else {
        const Expr x = Expr::variable();
        const Expr mes = c(2.0 * k.a3) * Expr::power(x, c(3)) + c(k.a2) * Expr::power(x, c(2)) - c(k.a0);
        double hi = 10.0 * r.x_g1;
        std::vector<double> found;
        for (int widen = 0; widen <= 2 && found.empty(); ++widen, hi *= 10.0) found = calculus::roots(mes, 0.0, hi);
        if (found.empty()) throw NoSolution("no positive minimum-efficient-scale root found");
        r.x_g2 = found.back();
        r.mes_coincides = false;
    }

    const auto tangent = [&](double x0) {
        const double s = k.marginal(x0);
        return calculus::Tangent{s, k(x0) - s * x0};
    };
    r.tangent_g1 = tangent(r.x_g1);
    r.tangent_g2 = tangent(r.x_g2);
    r.residual_g1 = std::abs((k(r.x_g1) - k.a0) / r.x_g1 - k.marginal(r.x_g1));
    r.residual_g2 = std::abs(k(r.x_g2) / r.x_g2 - k.marginal(r.x_g2));
    r.elasticity_g2 = r.x_g2 * k.marginal(r.x_g2) / k(r.x_g2);
    return r;
}

void MarketModel::validate() const {
    cost.validate();
    if (!(x_max > 0.0)) throw InvalidInput("market window needs x_max > 0");
    const Expr dp = differentiate(price);
    for (int i = 0; i <= kGrid; ++i) {
        const double x = x_max * i / kGrid;
        // A constant price (perfect competition) is admitted.
        if (dp(x) > 0.0)
            throw InvalidInput("price-response function must be decreasing; p'(" + io::format_number(x) + ") > 0");
    }
}

Expr MarketModel::revenue() const { return simplify(Expr::variable() * price); }

Expr MarketModel::profit() const { return simplify(revenue() - cost.total()); }

ProfitAnalysis profit_analysis(const MarketModel& m) {
    m.validate();
    ProfitAnalysis r;
    const Expr g = m.profit();
    const Expr dg = differentiate(g);
    const Expr ddg = differentiate(dg);

    const auto zeros = calculus::roots(g, 0.0, m.x_max);
    if (zeros.empty()) return r;
    for (double z : zeros) {
        const double slope = dg(z);
        if (slope > 0.0 && !r.x_s) r.x_s = z;
        if (slope < 0.0) r.x_g = z;
    }

    for (double z : calculus::roots(dg, 0.0, m.x_max)) {
        if (!(ddg(z) < 0.0)) continue;
        const double v = g(z);
        if (!r.g_max || v > *r.g_max) {
            r.x_m = z;
            r.g_max = v;
        }
    }
    if (r.x_m) {
        const double de = differentiate(m.revenue())(*r.x_m);
        r.marginal_at_max = m.cost.marginal(*r.x_m);
        r.parallel_tangent_residual = std::abs(de - *r.marginal_at_max);
    }
    return r;
}

CournotPoint cournot(const MarketModel& m) {
    const ProfitAnalysis pa = profit_analysis(m);
    if (!pa.x_m) throw NoSolution("no profit maximum in the window");
    const double x = *pa.x_m;
    CournotPoint cp{};
    cp.x_m = x;
    cp.price = m.price(x);
    cp.price_elasticity = calculus::elasticity(m.price, x);
    if (std::abs(1.0 + cp.price_elasticity) <= 1e-12)
        throw DomainError("price elasticity is -1 at the profit maximum; the Amoroso-Robinson formula degenerates");
    cp.amoroso_robinson_residual = std::abs(cp.price - m.cost.marginal(x) / (1.0 + cp.price_elasticity));
    return cp;
}

std::optional<RatioOptimum> ratio_optimum(const Expr& num, const Expr& den, double lo, double hi) {
    if (!(lo < hi)) throw InvalidInput("optimum window needs lo < hi");
    for (int i = 1; i < kGrid; ++i) {
        const double x = lo + (hi - lo) * i / kGrid;
        if (!(den(x) > 0.0)) throw InvalidInput("denominator must be positive on the window");
    }
    const Expr h = simplify(differentiate(num) * den - num * differentiate(den));
    const Expr ratio = num / den;
    const Expr d2 = differentiate(differentiate(ratio));

    std::optional<RatioOptimum> best;
    for (double x : calculus::roots(h, lo, hi)) {
        if (!(den(x) > 0.0)) continue;
        if (!(d2(x) < 0.0)) continue;
        const double v = ratio(x);
        if (best && v <= best->value) continue;
        RatioOptimum o{};
        o.x = x;
        o.value = v;
        o.eps_numerator = ratio_elasticity(num, x);
        o.eps_denominator = ratio_elasticity(den, x);
        o.certificate_residual = std::abs(o.eps_numerator - o.eps_denominator);
        best = o;
    }
    return best;
}

Equilibrium equilibrium(const Expr& demand, const Expr& supply, double p_u, double p_o) {
    if (!(p_u < p_o)) throw InvalidInput("price window needs p_u < p_o");
    double prev_n = 0.0, prev_a = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double p = i == kGrid ? p_o : p_u + (p_o - p_u) * i / kGrid;
        const double n = demand(p), a = supply(p);
        if (i > 0) {
            if (n > prev_n + 1e-12 * (1.0 + std::abs(prev_n)))
                throw InvalidInput("demand must be decreasing on the price window");
            if (a < prev_a - 1e-12 * (1.0 + std::abs(prev_a)))
                throw InvalidInput("supply must be increasing on the price window");
        }
        prev_n = n;
        prev_a = a;
    }
    const auto meet = calculus::roots(simplify(supply - demand), p_u, p_o);
    if (meet.empty()) throw NoSolution("demand and supply do not intersect in the price window");

    Equilibrium eq{};
    eq.price = meet.front();
    eq.quantity = demand(eq.price);
    if (const auto z = calculus::roots(demand, p_u, p_o); !z.empty()) eq.prohibitive_price = z.front();
    if (p_u <= 0.0 && 0.0 <= p_o) eq.saturation_quantity = demand(0.0);
    return eq;
}

MarketStrategies market_strategies(const Expr& demand, const Expr& supply, double p_u, double p_o) {
    MarketStrategies s{};
    s.equilibrium = equilibrium(demand, supply, p_u, p_o);
    const double pm = s.equilibrium.price;
    s.u1 = pm * s.equilibrium.quantity;
    s.consumer_surplus = calculus::integrate(demand, pm, p_o);
    s.producer_surplus = calculus::integrate(supply, p_u, pm);
    s.u2 = s.u1 + s.consumer_surplus;
    s.u3 = s.u1 - s.producer_surplus;
    return s;
}

double psych_value(double x, double a) {
    if (!(a > 0.0)) throw InvalidInput("value function needs a > 0");
    if (std::isnan(x)) throw InvalidInput("value function argument must be a number");
    if (x >= 0.0) return a * std::log10(1.0 + x);
    return -2.0 * a * std::log10(1.0 - x);
}

}  // namespace qecon::econ
