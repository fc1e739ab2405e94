#include "qecon/leontief.hpp"

#include <algorithm>
#include <cmath>

#include "qecon/error.hpp"
#include "qecon/linsolve.hpp"

namespace qecon::leontief {
namespace {

// Beyond this size (1 - P)^-1 is not materialised; each right-hand side is
// solved by elimination instead.
constexpr std::size_t kMaxInverseSize = 8;

bool any_negative(const Vector& v) {
    return std::any_of(v.entries().begin(), v.entries().end(), [](double x) { return x < 0.0; });
}

void require_dimension(const LeontiefModel& m, const Vector& v, const char* what) {
    if (v.size() != m.agents())
        throw DimensionMismatch(std::string(what) + " has dimension " + std::to_string(v.size()) + ", model has " +
                                std::to_string(m.agents()) + " agents");
}

void require_non_negative(const Vector& v, const char* what) {
    if (any_negative(v)) throw InvalidInput(std::string(what) + " must be non-negative");
}

}  // namespace

DeliveriesTable::DeliveriesTable(Matrix deliveries_, Vector final_demand_)
    : deliveries(std::move(deliveries_)), final_demand(std::move(final_demand_)) {
    if (!deliveries.is_square()) throw DimensionMismatch("deliveries table must be square");
    if (deliveries.rows() != final_demand.size())
        throw DimensionMismatch("final demand vector does not match the number of agents");
    for (double v : deliveries.data())
        if (v < 0.0) throw InvalidInput("deliveries must be non-negative");
    require_non_negative(final_demand, "final demand");
}

LeontiefModel::LeontiefModel(Matrix input_output, std::optional<Matrix> resources,
                             std::vector<std::string> agent_labels, std::vector<std::string> resource_labels)
    : p_(std::move(input_output)),
      r_(std::move(resources)),
      agent_labels_(std::move(agent_labels)),
      resource_labels_(std::move(resource_labels)) {
    if (!p_.is_square()) throw DimensionMismatch("input-output matrix must be square");
    for (double v : p_.data())
        if (v < 0.0) throw InvalidInput("input-output matrix entries must be non-negative");
    if (r_) {
        if (r_->cols() != p_.rows())
            throw DimensionMismatch("resource matrix must have one column per agent");
        for (double v : r_->data())
            if (v < 0.0) throw InvalidInput("resource matrix entries must be non-negative");
    }
    if (!agent_labels_.empty() && agent_labels_.size() != p_.rows())
        throw DimensionMismatch("agent label count does not match the model");
    if (!resource_labels_.empty() && (!r_ || resource_labels_.size() != r_->rows()))
        throw DimensionMismatch("resource label count does not match the resource matrix");

    const double det = linsolve::determinant(technology_matrix());
    if (linsolve::is_singular(det)) throw SingularMatrix("technology matrix 1 - P is singular", det);
}

Matrix LeontiefModel::technology_matrix() const { return Matrix::identity(p_.rows()) - p_; }

Matrix LeontiefModel::total_demand_matrix() const { return linsolve::inverse(technology_matrix()); }

TableModel model_from_table(const DeliveriesTable& table) {
    const std::size_t n = table.deliveries.rows();
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = table.final_demand[i];
        for (std::size_t j = 0; j < n; ++j) row += table.deliveries(i, j);
        if (row <= 0.0) throw InvalidInput("agent " + std::to_string(i + 1) + " has zero total output");
        q[i] = row;
    }
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = table.deliveries(i, j) / q[j];

    return TableModel{LeontiefModel(std::move(p)), Vector(std::move(q)), table.final_demand};
}

FlaggedVector final_demand(const LeontiefModel& m, const Vector& q) {
    require_dimension(m, q, "total output");
    require_non_negative(q, "total output");
    Vector y = m.technology_matrix() * q;
    const bool neg = any_negative(y);
    return {std::move(y), neg};
}

FlaggedVector total_output(const LeontiefModel& m, const Vector& y) {
    require_dimension(m, y, "final demand");
    require_non_negative(y, "final demand");

    Vector q;
    if (m.agents() <= kMaxInverseSize) {
        q = m.total_demand_matrix() * y;
    } else {
        const auto sol = linsolve::solve(linsolve::LinearSystem(m.technology_matrix(), y));
        if (sol.kind != linsolve::SolutionKind::Unique)
            throw SingularMatrix("technology matrix 1 - P is singular", 0.0);
        q = *sol.particular;
    }
    const bool neg = any_negative(q);
    return {std::move(q), neg};
}

Vector resource_requirements(const LeontiefModel& m, const Vector& vec, Given given) {
    if (!m.resources()) throw InvalidInput("model has no resource matrix");
    const Vector q = given == Given::TotalOutput ? (require_dimension(m, vec, "total output"), vec)
                                                 : total_output(m, vec).value;
    return *m.resources() * q;
}

Forecast forecast(const LeontiefModel& m, const Vector& next_demand) {
    Forecast f{total_output(m, next_demand), std::nullopt};
    if (m.resources()) f.resources = *m.resources() * f.total_output.value;
    return f;
}

}  // namespace qecon::leontief
