#pragma once

// Small CSV helpers: line splitting, strict number parsing and fixed
// significant-digit formatting for deterministic output.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cyclekit/errors.hpp"

namespace cyclekit::csv {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                          s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                          s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view line, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string &field, int line) {
    if (field.empty()) throw ParseError("empty numeric field", line);
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v))
        throw ParseError("not a finite number: '" + field + "'", line);
    return v;
}

inline int parse_int(const std::string &field, int line) {
    if (field.empty()) throw ParseError("empty integer field", line);
    errno = 0;
    char *end = nullptr;
    const long v = std::strtol(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        throw ParseError("not an integer: '" + field + "'", line);
    return static_cast<int>(v);
}

/// %.{digits}g, with negative zero normalised to "0".
inline std::string format_number(double v, int digits = 6) {
    if (v == 0.0) v = 0.0;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Absent values become empty cells.
inline std::string format_optional(const std::optional<double> &v, int digits = 6) {
    return v ? format_number(*v, digits) : std::string{};
}

inline void write_row(std::ostream &os, const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

} // namespace cyclekit::csv
