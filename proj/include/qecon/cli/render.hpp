#pragma once

#include <optional>
#include <set>
#include <string>

#include "json.hpp"

#include "qecon/finmath.hpp"
#include "qecon/linalg.hpp"

namespace qecon::cli {

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& name);

/// A command result. `data` carries every value at full precision; the
/// optional members mark results that also have a CSV form.
struct Report {
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    std::set<std::string> money;  // keys shown with two decimals in tables
    std::optional<finmath::Schedule> schedule;
    std::optional<linalg::Matrix> matrix;
};

nlohmann::ordered_json to_json(const linalg::Matrix& m);
nlohmann::ordered_json to_json(const linalg::Vector& v);
nlohmann::ordered_json to_json(const finmath::Schedule& s);

std::string schedule_csv(const finmath::Schedule& s);

/// Throws InvalidInput for CSV output of results without a tabular form.
std::string render(const Report& r, Format f);

}  // namespace qecon::cli
