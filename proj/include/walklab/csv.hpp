#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace harness {

// Header plus pre-rendered rows. Cells never contain commas or newlines, so
// no quoting is involved anywhere.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// 17 significant digits — round-trip exact for doubles, so rewriting a
// parsed file reproduces it byte for byte
std::string csv_real(double value);
std::string csv_int(std::int64_t value);

// UTF-8, comma-separated, every row newline-terminated, header first.
// I/O failures surface as std::runtime_error naming the path.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

CsvTable read_csv(const std::filesystem::path& path);

} // namespace harness
