#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace abdeflect {

/// Rectangular numeric table with named columns.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    explicit Table(std::vector<std::string> header_) : header(std::move(header_)) {}
    void add_row(std::initializer_list<double> values);
    void add_row(const std::vector<double>& values);
};

/// Shortest-exact decimal rendering of a double at 17 significant digits:
/// locale-independent, '.' decimal separator, round-trips bit-exactly.
std::string format_double(double value);

/// RFC-4180-style serialization: header row, comma separated, LF line
/// endings, byte-stable across platforms for equal inputs.
std::string to_csv(const Table& table);

/// Writes to_csv(table) at `path`. IO failures surface as std::runtime_error
/// carrying the path.
void emit_csv(const Table& table, const std::filesystem::path& path);

}  // namespace abdeflect
