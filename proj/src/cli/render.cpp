#include "qecon/cli/render.hpp"

#include <algorithm>
#include <vector>

#include "qecon/error.hpp"
#include "qecon/matrix_io.hpp"

namespace qecon::cli {

using json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "table") return Format::Table;
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw InvalidInput("unknown output format '" + name + "' (expected table, json or csv)");
}

json to_json(const linalg::Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const linalg::Vector& v) {
    json out = json::array();
    for (double x : v.entries()) out.push_back(x);
    return out;
}

json to_json(const finmath::Schedule& s) {
    json rows = json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"year", r.year}, {"interest", r.interest}, {"payment", r.payment}, {"balance", r.balance}});
    return {{"opening_balance", s.opening_balance}, {"rows", std::move(rows)}};
}

std::string schedule_csv(const finmath::Schedule& s) {
    std::string out = "year,interest,payment,balance\n";
    for (const auto& r : s.rows) {
        out += std::to_string(r.year) + ',' + io::format_fixed(r.interest, 2) + ',' + io::format_fixed(r.payment, 2) +
               ',' + io::format_fixed(r.balance, 2) + '\n';
    }
    return out;
}

namespace {

bool is_scalar(const json& v) { return !v.is_array() && !v.is_object(); }

std::string scalar_text(const std::string& key, const json& v, const std::set<std::string>& money) {
    if (v.is_null()) return "-";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    const double x = v.get<double>();
    return money.count(key) ? io::format_fixed(x, 2) : io::format_number(x);
}

std::string inline_text(const std::string& key, const json& v, const std::set<std::string>& money) {
    if (is_scalar(v)) return scalar_text(key, v, money);
    if (v.is_array()) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += inline_text(key, v[i], money);
        }
        return s + ")";
    }
    std::string s = "{";
    bool first = true;
    for (const auto& [k, x] : v.items()) {
        if (!first) s += ", ";
        first = false;
        s += k + "=" + inline_text(k, x, money);
    }
    return s + "}";
}

std::string pad_left(const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; }
std::string pad_right(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

void grid(const std::vector<std::vector<std::string>>& cells, std::size_t indent, std::string& out) {
    std::vector<std::size_t> width;
    for (const auto& row : cells) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    }
    for (const auto& row : cells) {
        std::string line(indent, ' ');
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) line += "  ";
            line += pad_left(row[j], width[j]);
        }
        out += line + '\n';
    }
}

bool is_matrix(const json& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](const json& r) {
               return r.is_array() && std::all_of(r.begin(), r.end(), [](const json& x) { return x.is_number(); });
           });
}

bool is_record_list(const json& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](const json& r) { return r.is_object(); });
}

void table(const json& obj, const std::set<std::string>& money, std::size_t indent, std::string& out) {
    std::size_t key_width = 0;
    for (const auto& [k, v] : obj.items()) key_width = std::max(key_width, k.size());
    const std::string margin(indent, ' ');

    for (const auto& [k, v] : obj.items()) {
        if (v.is_object()) {
            out += margin + k + ":\n";
            table(v, money, indent + 2, out);
        } else if (v.is_array() && is_matrix(v)) {
            out += margin + k + ":\n";
            std::vector<std::vector<std::string>> cells;
            for (const auto& row : v) {
                cells.emplace_back();
                for (const auto& x : row) cells.back().push_back(scalar_text(k, x, money));
            }
            grid(cells, indent + 2, out);
        } else if (v.is_array() && is_record_list(v)) {
            out += margin + k + ":\n";
            std::vector<std::string> cols;
            for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
            std::vector<std::vector<std::string>> cells{cols};
            for (const auto& rec : v) {
                cells.emplace_back();
                for (const auto& c : cols) cells.back().push_back(rec.contains(c) ? inline_text(c, rec[c], money) : "-");
            }
            grid(cells, indent + 2, out);
        } else if (v.is_array() && v.empty()) {
            out += margin + pad_right(k, key_width) + "  (none)\n";
        } else {
            out += margin + pad_right(k, key_width) + "  " + inline_text(k, v, money) + '\n';
        }
    }
}

}  // namespace

std::string render(const Report& r, Format f) {
    switch (f) {
        case Format::Json:
            if (r.data.empty() && r.matrix) {
                const json m{{"rows", r.matrix->rows()}, {"cols", r.matrix->cols()}, {"matrix", to_json(*r.matrix)}};
                return m.dump(2) + "\n";
            }
            return r.data.dump(2) + "\n";
        case Format::Csv:
            if (r.schedule) return schedule_csv(*r.schedule);
            if (r.matrix) return io::format_matrix_text(*r.matrix);
            throw InvalidInput("csv output is only available for schedules and matrices");
        case Format::Table: {
            if (r.data.empty() && r.matrix) return io::format_matrix_text(*r.matrix);
            std::string out;
            table(r.data, r.money, 0, out);
            return out;
        }
    }
    return {};
}

}  // namespace qecon::cli
