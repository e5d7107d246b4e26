#include "decolens/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "decolens/errors.hpp"

namespace decolens {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(const std::filesystem::path& file,
                 const std::vector<Column>& columns) {
    std::ofstream out(file);
    if (!out) throw Error("cannot open " + file.string() + " for writing");
    if (columns.empty()) return;
    const std::size_t rows = columns.front().values.size();
    for (const auto& c : columns)
        if (c.values.size() != rows)
            throw Error("write_table: ragged columns in " + file.string());

    if (file.extension() == ".json") {
        out << "{\n";
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << "  \"" << columns[c].name << "\": [";
            for (std::size_t r = 0; r < rows; ++r) {
                if (r) out << ", ";
                out << format_double(columns[c].values[r]);
            }
            out << "]" << (c + 1 < columns.size() ? "," : "") << "\n";
        }
        out << "}\n";
        return;
    }
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c].values[r]);
        out << "\n";
    }
}

std::string file_hash(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot hash " + file.string());
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001B3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, h);
    return hex;
}

}  // namespace decolens
