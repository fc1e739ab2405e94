#pragma once

#include <optional>

#include "qecon/calculus.hpp"
#include "qecon/expr.hpp"

namespace qecon::econ {

using calculus::Expr;

/// Cubic total cost K(x) = a3 x^3 + a2 x^2 + a1 x + a0 with a3 > 0, a2 < 0,
/// a1 > 0, a0 >= 0 and a2^2 < 3 a3 a1 (marginal costs stay positive).
struct CostModel {
    double a3, a2, a1, a0;

    void validate() const;
    Expr total() const;     // K
    Expr variable() const;  // K_v = K - a0
    double operator()(double x) const;
    double marginal(double x) const;  // K'
};

struct CostAnalysis {
    double x_w;   // inflection, minimum of marginal costs
    double x_g1;  // minimum of average variable costs
    double x_g2;  // minimum of average costs (MES)
    bool mes_coincides;  // a0 = 0: x_g2 equals x_g1
    double marginal_min;  // K'(x_w)
    // Tangents through the origin-side intercepts at the phase boundaries.
    calculus::Tangent tangent_g1;  // intercept equals a0
    calculus::Tangent tangent_g2;  // intercept equals 0
    double residual_g1;  // |K_v(x_g1)/x_g1 - K'(x_g1)|
    double residual_g2;  // |K(x_g2)/x_g2 - K'(x_g2)|
    double elasticity_g2;  // x K'/K at x_g2; 1 at the MES
};

CostAnalysis cost_analysis(const CostModel& c);

/// Price-response function p(x), strictly decreasing on [0, x_max].
struct MarketModel {
    Expr price;
    CostModel cost;
    double x_max;

    void validate() const;
    Expr revenue() const;  // E = x p(x)
    Expr profit() const;   // G = E - K
};

struct ProfitAnalysis {
    std::optional<double> x_s;  // break-even, G = 0, G' > 0
    std::optional<double> x_g;  // end of the profitable zone, G = 0, G' < 0
    std::optional<double> x_m;  // maximum profit
    std::optional<double> g_max;
    std::optional<double> parallel_tangent_residual;  // |E'(x_m) - K'(x_m)|
    std::optional<double> marginal_at_max;            // K'(x_m)
};

ProfitAnalysis profit_analysis(const MarketModel& m);

struct CournotPoint {
    double x_m;
    double price;
    double price_elasticity;
    double amoroso_robinson_residual;  // |p - K'/(1 + eps_p)|
};

/// Throws NoSolution without a profit maximum and DomainError when eps_p = -1.
CournotPoint cournot(const MarketModel& m);

struct RatioOptimum {
    double x;
    double value;
    double eps_numerator;
    double eps_denominator;
    double certificate_residual;  // |eps_num - eps_den|
};

/// Maximum of num/den on [lo, hi]; absent when num'den - num den' vanishes
/// identically or has no root with a negative second derivative.
std::optional<RatioOptimum> ratio_optimum(const Expr& num, const Expr& den, double lo, double hi);

struct Equilibrium {
    double price;     // p_M
    double quantity;  // N(p_M)
    std::optional<double> prohibitive_price;    // N(p) = 0
    std::optional<double> saturation_quantity;  // N(0)
};

/// Demand N(p) decreasing and supply A(p) increasing on [p_u, p_o].
/// Throws NoSolution when the curves do not meet in the window.
Equilibrium equilibrium(const Expr& demand, const Expr& supply, double p_u, double p_o);

struct MarketStrategies {
    Equilibrium equilibrium;
    double u1;  // p_M N(p_M)
    double u2;  // u1 + consumer surplus
    double u3;  // u1 - producer surplus
    double consumer_surplus;
    double producer_surplus;
};

MarketStrategies market_strategies(const Expr& demand, const Expr& supply, double p_u, double p_o);

/// a log10(1 + x) for gains, -2 a log10(1 - x) for losses.
double psych_value(double x, double a);

}  // namespace qecon::econ
