#include "abdeflect/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "abdeflect/errors.hpp"

namespace abdeflect {

void Table::add_row(std::initializer_list<double> values) {
    add_row(std::vector<double>(values));
}

void Table::add_row(const std::vector<double>& values) {
    if (values.size() != header.size())
        throw DomainError("Table: row width does not match the header");
    rows.push_back(values);
}

std::string format_double(double value) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path.string());
    os << to_csv(table);
    if (!os) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

}  // namespace abdeflect
