#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

// Sequences, series, interest, redemption, pension and depreciation models.
// Amounts are in currency units (CU); rates are in percent per year; q is the
// dimensionless interest (or depreciation) factor 1 + p/100.
namespace qecon::finmath {

/// 1 + p/100
double interest_factor(double percent);

enum class SequenceKind { Arithmetical, Geometrical };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Arithmetical;
    double first = 0.0;
    double step = 1.0;  // difference d (arithmetical) or quotient q (geometrical)

    void validate() const;
};

/// n-th element, n >= 1.
double seq_term(const SequenceSpec& s, long n);
/// Sum of the first n elements, n >= 1.
double series_sum(const SequenceSpec& s, long n);

// --- Compound interest:  K_n = K_0 q^n ------------------------------------

struct CompoundValues {
    std::optional<double> k0, kn, q, n;
};

struct CompoundResult {
    double k0, kn, q, n;
};

/// Fills in whichever of the four values is missing. n is returned as a real.
CompoundResult compound_solve(const CompoundValues& known);

struct EffectiveRate {
    double q_eff;
    double p_eff;
};

EffectiveRate effective_rate(double p_nominal, int periods_per_year);

// --- Installment savings:  K_n = E q (q^n - 1)/(q - 1) ----------------------

struct InstallmentValues {
    std::optional<double> kn, e, q, n;
};

struct InstallmentResult {
    double kn, e, q, n;
    double present_value;  // B_0 = K_n / q^n
};

InstallmentResult installment_solve(const InstallmentValues& known);

// --- Redemption in constant annuities --------------------------------------

struct ScheduleRow {
    int year;
    double interest;
    double payment;
    double balance;
};

struct Schedule {
    double opening_balance = 0.0;
    std::vector<ScheduleRow> rows;
};

struct RedemptionPlan {
    Schedule schedule;     // payment column holds the redemption part T_n
    double annuity;        // A
    double initial_redemption_percent;  // t
    double analytic_years; // n solving R_n = 0 exactly
    double final_annuity;  // reduced annuity of the closing year
};

struct RedemptionTerms {
    // Exactly one of these must be set.
    std::optional<double> redemption_percent;  // t
    std::optional<double> annuity;             // A
};

/// Full plan until the debt is repaid (the last annuity is reduced so the
/// balance lands at zero), or `horizon` years when given.
RedemptionPlan redemption_plan(double r0, double percent, const RedemptionTerms& terms,
                               std::optional<int> horizon = std::nullopt);

/// R_n = R_0 q^n - A (q^n - 1)/(q - 1)
double remaining_debt(double r0, double q, double annuity, double n);

struct RedemptionValues {
    std::optional<double> rn, r0, q, n, annuity;
};

struct RedemptionResult {
    double rn, r0, q, n, annuity;
    double redemption_percent;  // t consistent with A and R_0
};

RedemptionResult redemption_solve(const RedemptionValues& known);

// --- Pensions ------------------------------------------------------------

struct PensionPlan {
    Schedule schedule;  // payment column holds the yearly withdrawals m*a
    double first_year_interest;      // Z_1
    std::optional<double> duration;  // full years until K_n = 0
    bool everlasting_capable;        // balance never declines
    double everlasting_amount;       // a that keeps K_n = K_0
    // Interest credited in each of the m intervals of the first year.
    std::vector<double> first_year_interval_interest;
};

/// Withdrawals of `amount` at the start of each of `per_year` intervals.
/// Without a horizon, rows run for the floor of the duration, or 30 years
/// when the capital is never exhausted.
PensionPlan pension_plan(double k0, double percent, int per_year, double amount,
                         std::optional<int> horizon = std::nullopt);

/// K_n = K_0 q^n - [m + (m+1)(q-1)/2] a (q^n - 1)/(q - 1)
double pension_balance(double k0, double q, int per_year, double amount, double n);
/// B_0 = [m + (m+1)(q-1)/2] a (q^n - 1)/(q^n (q - 1))
double pension_present_value(double q, int per_year, double amount, double n);
/// a = K_0 (q - 1)/[m + (m+1)(q-1)/2]
double everlasting_pension(double k0, double q, int per_year);

// --- Depreciation --------------------------------------------------------

struct LinearDepreciation {
    int useful_life;  // N
};

struct DecliningDepreciation {
    double percent;  // p, 0 < p < 100
};

using DepreciationMethod = std::variant<LinearDepreciation, DecliningDepreciation>;

struct DepreciationResult {
    double remaining;
    Schedule schedule;  // payment column holds the amount written off
};

DepreciationResult depreciation(double k0, const DepreciationMethod& method, int years);

/// Years until the declining balance reaches `remaining`.
double declining_years(double k0, double remaining, double percent);
/// Rate that reaches `remaining` after `years`.
double declining_percent(double k0, double remaining, double years);

// --- Unified formula -----------------------------------------------------

/// K_n = K_0 q^n + R (q^n - 1)/(q - 1), q > 0, q != 1.
double master_formula(double k0, double q, double r, double n);

}  // namespace qecon::finmath
