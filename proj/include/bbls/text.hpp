#pragma once
#include <cstdio>
#include <string>
#include <vector>

namespace bbls {

// Shortest round-trippable decimal form used by all file formats.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One row per line, space-separated entries, 17 significant digits.
inline std::string matrix_to_text(const std::vector<std::vector<double>>& m) {
    std::string out;
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ' ';
            out += format_g17(row[j]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace bbls
