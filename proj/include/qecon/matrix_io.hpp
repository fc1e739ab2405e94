#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qecon/linalg.hpp"

// Shared matrix text format: UTF-8, one row per line, entries separated by
// commas, '.' as decimal point. Blank lines and lines starting with '#' are
// skipped. Formatting never depends on the process locale.
namespace qecon::io {

linalg::Matrix parse_matrix_text(std::string_view text);
std::string format_matrix_text(const linalg::Matrix& m);

/// Accepts a single row or a single column; returns a column vector.
linalg::Vector parse_vector_text(std::string_view text);
/// One entry per line (a column in the matrix format).
std::string format_vector_text(const linalg::Vector& v);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);
/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);
double parse_number(std::string_view token);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qecon::io
