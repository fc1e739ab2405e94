#include "qecon/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "qecon/error.hpp"

namespace qecon::io {
namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::vector<double>> parse_rows(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        std::vector<double> row;
        while (true) {
            const auto comma = line.find(',');
            const std::string_view token = trim(line.substr(0, comma));
            try {
                row.push_back(parse_number(token));
            } catch (const InvalidInput& e) {
                throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
            }
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw DimensionMismatch("line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(rows.front().size()) + " entries, found " +
                                    std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidInput("no matrix rows found");
    return rows;
}

}  // namespace

double parse_number(std::string_view token) {
    if (token.empty()) throw InvalidInput("empty entry");
    // from_chars rejects a leading '+'.
    std::string_view digits = token;
    if (digits.front() == '+') digits.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(value))
        throw InvalidInput("not a number: '" + std::string(token) + "'");
    return value;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";  // also folds -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    std::string s(buf, ptr);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

linalg::Matrix parse_matrix_text(std::string_view text) {
    return linalg::Matrix::from_rows(parse_rows(text));
}

std::string format_matrix_text(const linalg::Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_number(m(i, j));
        }
        out += '\n';
    }
    return out;
}

linalg::Vector parse_vector_text(std::string_view text) {
    const auto rows = parse_rows(text);
    if (rows.size() == 1) return linalg::Vector(rows.front());
    if (rows.front().size() != 1)
        throw DimensionMismatch("vector file must hold a single row or a single column");
    std::vector<double> entries;
    for (const auto& r : rows) entries.push_back(r.front());
    return linalg::Vector(std::move(entries));
}

std::string format_vector_text(const linalg::Vector& v) {
    std::string out;
    for (double x : v.entries()) out += format_number(x) + '\n';
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace qecon::io
