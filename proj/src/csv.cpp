#include "walklab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace harness {

std::string csv_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string csv_int(std::int64_t value) {
    return std::to_string(value);
}

namespace {

std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    if (line.empty() || line.back() == ',')
        cells.emplace_back();
    return cells;
}

} // namespace

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    // binary mode: no platform newline translation, output is byte-stable
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << join(table.header);
    for (const auto& row : table.rows)
        out << join(row);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            table.header = split(line);
            first = false;
        } else {
            table.rows.push_back(split(line));
        }
    }
    if (first)
        throw std::runtime_error("'" + path.string() + "' is empty, expected a CSV header");
    return table;
}

} // namespace harness
