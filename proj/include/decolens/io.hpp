#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace decolens {

// One named column of a table; all columns share the row count.
struct Column {
    std::string name;
    std::vector<double> values;
};

// Writes a table as CSV (header row; floats with 17 significant digits) or
// as a JSON object of column arrays, depending on the extension handed in
// by the caller (".csv" / ".json").
void write_table(const std::filesystem::path& file,
                 const std::vector<Column>& columns);

// FNV-1a 64-bit over the file bytes, rendered as 16 hex digits.
std::string file_hash(const std::filesystem::path& file);

std::string format_double(double v);  // %.17g

}  // namespace decolens
