#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qecon/linalg.hpp"

// Stationary input-output model: agents deliver goods to each other and to
// final demand; P_ij = n_ij / q_j is the input-output matrix.
namespace qecon::leontief {

using linalg::Matrix;
using linalg::Vector;

struct DeliveriesTable {
    DeliveriesTable(Matrix deliveries, Vector final_demand);

    Matrix deliveries;   // n_ij, goods from agent i to agent j
    Vector final_demand; // y_i
};

class LeontiefModel {
public:
    /// Throws when P has negative entries, 1 - P is singular, or R is
    /// malformed.
    explicit LeontiefModel(Matrix input_output, std::optional<Matrix> resources = std::nullopt,
                           std::vector<std::string> agent_labels = {},
                           std::vector<std::string> resource_labels = {});

    std::size_t agents() const noexcept { return p_.rows(); }
    const Matrix& input_output() const noexcept { return p_; }
    const std::optional<Matrix>& resources() const noexcept { return r_; }
    const std::vector<std::string>& agent_labels() const noexcept { return agent_labels_; }
    const std::vector<std::string>& resource_labels() const noexcept { return resource_labels_; }

    /// 1 - P
    Matrix technology_matrix() const;
    /// (1 - P)^-1
    Matrix total_demand_matrix() const;

private:
    Matrix p_;
    std::optional<Matrix> r_;
    std::vector<std::string> agent_labels_;
    std::vector<std::string> resource_labels_;
};

struct TableModel {
    LeontiefModel model;
    Vector total_output;  // q
    Vector final_demand;  // y
};

// Negative components are economically meaningless but are reported rather
// than clamped.
struct FlaggedVector {
    Vector value;
    bool has_negative = false;
};

TableModel model_from_table(const DeliveriesTable& table);

/// y = (1 - P) q
FlaggedVector final_demand(const LeontiefModel& m, const Vector& total_output);
/// q = (1 - P)^-1 y
FlaggedVector total_output(const LeontiefModel& m, const Vector& final_demand);

enum class Given { TotalOutput, FinalDemand };

/// v = R q, or v = R (1 - P)^-1 y.
Vector resource_requirements(const LeontiefModel& m, const Vector& vec, Given given);

struct Forecast {
    FlaggedVector total_output;
    std::optional<Vector> resources;
};

/// Applies the reference-period P unchanged to a new final demand.
Forecast forecast(const LeontiefModel& m, const Vector& next_demand);

}  // namespace qecon::leontief
