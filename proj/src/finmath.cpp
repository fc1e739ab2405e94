#include "qecon/finmath.hpp"

#include <cmath>
#include <string>

#include "qecon/error.hpp"

namespace qecon::finmath {
namespace {

constexpr int kMaxScheduleYears = 10000;
constexpr int kDefaultPensionYears = 30;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(name) + " must be positive");
}

int count_known(std::initializer_list<bool> flags) {
    int k = 0;
    for (bool f : flags) k += f ? 1 : 0;
    return k;
}

// (q^n - 1)/(q - 1), with the q -> 1 limit n.
double growth_sum(double q, double n) {
    const double delta = q - 1.0;
    if (delta == 0.0) return n;
    return std::expm1(n * std::log1p(delta)) / delta;
}

// Bisection for a strictly increasing-through-zero f on (lo, hi]; expands hi
// geometrically until f(hi) > 0.
template <class F>
double solve_increasing(F f, double lo, double hi, const char* what) {
    int guard = 0;
    while (f(hi) <= 0.0) {
        hi = lo + 2.0 * (hi - lo);
        if (++guard > 200) throw NumericalFailure(std::string("no bracket found while solving for ") + what);
    }
    for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double bracket_term(double q, int per_year) { return per_year + 0.5 * (per_year + 1) * (q - 1.0); }

}  // namespace

double interest_factor(double percent) { return 1.0 + percent / 100.0; }

void SequenceSpec::validate() const {
    if (!std::isfinite(first) || !std::isfinite(step)) throw InvalidInput("sequence parameters must be finite");
    if (kind == SequenceKind::Arithmetical && step == 0.0)
        throw InvalidInput("arithmetical sequence needs a non-zero difference");
    if (kind == SequenceKind::Geometrical && (step == 0.0 || step == 1.0))
        throw InvalidInput("geometrical sequence needs a quotient other than 0 and 1");
}

double seq_term(const SequenceSpec& s, long n) {
    s.validate();
    if (n < 1) throw InvalidInput("sequence index starts at 1");
    const double k = static_cast<double>(n - 1);
    return s.kind == SequenceKind::Arithmetical ? s.first + k * s.step : s.first * std::pow(s.step, k);
}

double series_sum(const SequenceSpec& s, long n) {
    s.validate();
    if (n < 1) throw InvalidInput("series needs at least one term");
    const double nn = static_cast<double>(n);
    if (s.kind == SequenceKind::Arithmetical) return nn * s.first + 0.5 * s.step * (nn - 1.0) * nn;
    return s.first * (std::pow(s.step, nn) - 1.0) / (s.step - 1.0);
}

CompoundResult compound_solve(const CompoundValues& v) {
    if (count_known({v.k0.has_value(), v.kn.has_value(), v.q.has_value(), v.n.has_value()}) != 3)
        throw InvalidInput("compound interest: give exactly three of K0, Kn, q, n");
    if (v.k0) require_positive(*v.k0, "K0");
    if (v.kn) require_positive(*v.kn, "Kn");
    if (v.q) require_positive(*v.q, "q");
    if (v.n) require_positive(*v.n, "n");

    if (!v.kn) return {*v.k0, *v.k0 * std::pow(*v.q, *v.n), *v.q, *v.n};
    if (!v.k0) return {*v.kn / std::pow(*v.q, *v.n), *v.kn, *v.q, *v.n};
    if (!v.q) return {*v.k0, *v.kn, std::pow(*v.kn / *v.k0, 1.0 / *v.n), *v.n};
    if (*v.q == 1.0) throw InvalidInput("cannot solve for n with q = 1");
    return {*v.k0, *v.kn, *v.q, std::log(*v.kn / *v.k0) / std::log(*v.q)};
}

EffectiveRate effective_rate(double p_nominal, int periods_per_year) {
    require_positive(p_nominal, "nominal rate");
    if (periods_per_year < 1) throw InvalidInput("periods per year must be at least 1");
    const double q_eff = std::pow(1.0 + p_nominal / (100.0 * periods_per_year), periods_per_year);
    return {q_eff, 100.0 * (q_eff - 1.0)};
}

InstallmentResult installment_solve(const InstallmentValues& v) {
    if (count_known({v.kn.has_value(), v.e.has_value(), v.q.has_value(), v.n.has_value()}) != 3)
        throw InvalidInput("installment savings: give exactly three of Kn, E, q, n");
    if (v.kn) require_positive(*v.kn, "Kn");
    if (v.e) require_positive(*v.e, "E");
    if (v.n) require_positive(*v.n, "n");
    if (v.q && !(*v.q > 1.0)) throw InvalidInput("installment savings need q > 1");

    InstallmentResult r{};
    if (!v.kn) {
        r = {*v.e * *v.q * growth_sum(*v.q, *v.n), *v.e, *v.q, *v.n, 0.0};
    } else if (!v.e) {
        r = {*v.kn, *v.kn / (*v.q * growth_sum(*v.q, *v.n)), *v.q, *v.n, 0.0};
    } else if (!v.n) {
        const double n = std::log(1.0 + (*v.q - 1.0) * (*v.kn / (*v.e * *v.q))) / std::log(*v.q);
        r = {*v.kn, *v.e, *v.q, n, 0.0};
    } else {
        // E q (q^n - 1)/(q - 1) increases in q from E n at q = 1.
        const double kn = *v.kn, e = *v.e, n = *v.n;
        if (!(kn > e * n)) throw InvalidInput("installment savings: Kn must exceed n*E for an interest factor q > 1");
        const double q = solve_increasing([&](double x) { return e * x * growth_sum(x, n) - kn; }, 1.0, 2.0, "q");
        r = {kn, e, q, n, 0.0};
    }
    r.present_value = r.kn / std::pow(r.q, r.n);
    return r;
}

double remaining_debt(double r0, double q, double annuity, double n) {
    return r0 * std::pow(q, n) - annuity * growth_sum(q, n);
}

RedemptionPlan redemption_plan(double r0, double percent, const RedemptionTerms& terms, std::optional<int> horizon) {
    require_positive(r0, "R0");
    require_positive(percent, "p");
    if (terms.redemption_percent.has_value() == terms.annuity.has_value())
        throw InvalidInput("redemption plan: give either the initial redemption rate t or the annuity A");
    if (horizon && *horizon < 0) throw InvalidInput("horizon must be non-negative");

    const double q = interest_factor(percent);
    double annuity = 0.0;
    double t = 0.0;
    if (terms.redemption_percent) {
        t = *terms.redemption_percent;
        if (!(t > 0.0)) throw InvalidInput("initial redemption rate t must be positive, otherwise the debt never shrinks");
        annuity = r0 * (percent + t) / 100.0;
    } else {
        annuity = *terms.annuity;
        if (!(annuity > r0 * (q - 1.0)))
            throw InvalidInput("annuity does not exceed the first year's interest; the debt never shrinks");
        t = 100.0 * annuity / r0 - percent;
    }

    RedemptionPlan plan{};
    plan.annuity = annuity;
    plan.initial_redemption_percent = t;
    plan.analytic_years = std::log(annuity / (annuity - r0 * (q - 1.0))) / std::log(q);
    plan.final_annuity = annuity;
    plan.schedule.opening_balance = r0;

    const int limit = horizon.value_or(kMaxScheduleYears);
    double balance = r0;
    for (int year = 1; year <= limit && balance > 0.0; ++year) {
        const double interest = balance * percent / 100.0;
        if (balance + interest <= annuity * (1.0 + 1e-12)) {
            plan.final_annuity = balance + interest;
            plan.schedule.rows.push_back({year, interest, balance, 0.0});
            balance = 0.0;
            break;
        }
        const double redemption = annuity - interest;
        balance = balance + interest - annuity;
        plan.schedule.rows.push_back({year, interest, redemption, balance});
    }
    if (!horizon && balance > 0.0) throw NumericalFailure("redemption plan exceeds " + std::to_string(kMaxScheduleYears) + " years");
    return plan;
}

RedemptionResult redemption_solve(const RedemptionValues& v) {
    if (count_known({v.rn.has_value(), v.r0.has_value(), v.q.has_value(), v.n.has_value(),
                     v.annuity.has_value()}) != 4)
        throw InvalidInput("redemption: give exactly four of Rn, R0, q, n, A");
    if (v.rn && (*v.rn < 0.0 || !std::isfinite(*v.rn))) throw InvalidInput("Rn must be non-negative");
    if (v.r0) require_positive(*v.r0, "R0");
    if (v.n) require_positive(*v.n, "n");
    if (v.annuity) require_positive(*v.annuity, "A");
    if (v.q && !(*v.q > 1.0)) throw InvalidInput("redemption needs q > 1");

    RedemptionResult r{};
    if (!v.rn) {
        r = {remaining_debt(*v.r0, *v.q, *v.annuity, *v.n), *v.r0, *v.q, *v.n, *v.annuity, 0.0};
    } else if (!v.r0) {
        const double r0 = (*v.rn + *v.annuity * growth_sum(*v.q, *v.n)) / std::pow(*v.q, *v.n);
        r = {*v.rn, r0, *v.q, *v.n, *v.annuity, 0.0};
    } else if (!v.annuity) {
        const double a = (*v.r0 * std::pow(*v.q, *v.n) - *v.rn) / growth_sum(*v.q, *v.n);
        r = {*v.rn, *v.r0, *v.q, *v.n, a, 0.0};
    } else if (!v.n) {
        const double q = *v.q, a = *v.annuity;
        const double num = a - *v.rn * (q - 1.0);
        const double den = a - *v.r0 * (q - 1.0);
        if (!(den > 0.0) || !(num > 0.0) || num < den)
            throw InvalidInput("redemption: inconsistent values, the remaining debt is never reached");
        r = {*v.rn, *v.r0, q, std::log(num / den) / std::log(q), a, 0.0};
    } else {
        // r0 q^n - A (q^n - 1)/(q - 1) - Rn has a single root q > 1 when it is
        // negative at q = 1.
        const double r0 = *v.r0, a = *v.annuity, n = *v.n, rn = *v.rn;
        if (!(r0 - a * n - rn < 0.0))
            throw InvalidInput("redemption: payments do not exceed the principal, no interest factor q > 1 fits");
        const double q = solve_increasing([&](double x) { return remaining_debt(r0, x, a, n) - rn; }, 1.0, 2.0, "q");
        r = {rn, r0, q, n, a, 0.0};
    }
    r.redemption_percent = 100.0 * (r.annuity / r.r0 - (r.q - 1.0));
    return r;
}

double pension_balance(double k0, double q, int per_year, double amount, double n) {
    return k0 * std::pow(q, n) - bracket_term(q, per_year) * amount * growth_sum(q, n);
}

double pension_present_value(double q, int per_year, double amount, double n) {
    if (!(q > 1.0)) throw InvalidInput("pension present value needs q > 1");
    return bracket_term(q, per_year) * amount * growth_sum(q, n) / std::pow(q, n);
}

double everlasting_pension(double k0, double q, int per_year) {
    if (!(q > 1.0)) throw InvalidInput("everlasting pension needs q > 1");
    return k0 * (q - 1.0) / bracket_term(q, per_year);
}

PensionPlan pension_plan(double k0, double percent, int per_year, double amount, std::optional<int> horizon) {
    require_positive(k0, "K0");
    require_positive(percent, "p");
    require_positive(amount, "pension amount a");
    if (per_year < 1) throw InvalidInput("withdrawals per year must be at least 1");
    if (horizon && *horizon < 0) throw InvalidInput("horizon must be non-negative");

    const double q = interest_factor(percent);
    const double m = per_year;
    const double yearly_cost = bracket_term(q, per_year) * amount;

    PensionPlan plan{};
    plan.first_year_interest = (k0 - 0.5 * (m + 1.0) * amount) * percent / 100.0;
    plan.everlasting_amount = everlasting_pension(k0, q, per_year);
    plan.everlasting_capable = !(yearly_cost > k0 * (q - 1.0));
    if (!plan.everlasting_capable)
        plan.duration = std::log(yearly_cost / (yearly_cost - k0 * (q - 1.0))) / std::log(q);
    for (int k = 1; k <= per_year; ++k) plan.first_year_interval_interest.push_back((k0 - k * amount) * (q - 1.0) / m);

    int years = kDefaultPensionYears;
    if (horizon)
        years = *horizon;
    else if (plan.duration)
        years = static_cast<int>(std::floor(*plan.duration + 1e-9));
    if (years > kMaxScheduleYears) throw NumericalFailure("pension plan exceeds " + std::to_string(kMaxScheduleYears) + " years");

    plan.schedule.opening_balance = k0;
    double balance = k0;
    for (int year = 1; year <= years; ++year) {
        const double interest = (balance - 0.5 * (m + 1.0) * amount) * percent / 100.0;
        balance = balance - m * amount + interest;
        plan.schedule.rows.push_back({year, interest, m * amount, balance});
    }
    return plan;
}

DepreciationResult depreciation(double k0, const DepreciationMethod& method, int years) {
    require_positive(k0, "K0");
    DepreciationResult out{};
    out.schedule.opening_balance = k0;

    if (const auto* lin = std::get_if<LinearDepreciation>(&method)) {
        const int life = lin->useful_life;
        if (life < 1) throw InvalidInput("useful life N must be at least 1 year");
        if (years < 1 || years > life) throw InvalidInput("linear depreciation needs 1 <= n <= N");
        const double rate = k0 / life;
        for (int y = 1; y <= years; ++y) out.schedule.rows.push_back({y, 0.0, rate, k0 - y * rate});
        out.remaining = k0 - years * rate;
        return out;
    }

    const double p = std::get<DecliningDepreciation>(method).percent;
    if (!(p > 0.0 && p < 100.0)) throw InvalidInput("declining-balance rate must lie strictly between 0 and 100");
    if (years < 0) throw InvalidInput("years must be non-negative");
    const double q = 1.0 - p / 100.0;
    double balance = k0;
    for (int y = 1; y <= years; ++y) {
        const double next = balance * q;
        out.schedule.rows.push_back({y, 0.0, balance - next, next});
        balance = next;
    }
    out.remaining = k0 * std::pow(q, years);
    return out;
}

double declining_years(double k0, double remaining, double percent) {
    require_positive(k0, "K0");
    require_positive(remaining, "remaining value");
    if (!(percent > 0.0 && percent < 100.0)) throw InvalidInput("declining-balance rate must lie strictly between 0 and 100");
    return std::log(remaining / k0) / std::log(1.0 - percent / 100.0);
}

double declining_percent(double k0, double remaining, double years) {
    require_positive(k0, "K0");
    require_positive(remaining, "remaining value");
    require_positive(years, "years");
    return 100.0 * (1.0 - std::pow(remaining / k0, 1.0 / years));
}

double master_formula(double k0, double q, double r, double n) {
    if (!(q > 0.0) || q == 1.0) throw InvalidInput("master formula needs q > 0 and q != 1");
    if (n < 0.0) throw InvalidInput("n must be non-negative");
    const double qn = std::pow(q, n);
    return k0 * qn + r * (qn - 1.0) / (q - 1.0);
}

}  // namespace qecon::finmath
