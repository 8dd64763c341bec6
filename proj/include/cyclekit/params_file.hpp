#pragma once

// "key = value" parameter files exchanged between CLI subcommands.
//
//   # comment
//   A = -5
//   B = 55.3
//   C = 0.628
//   D = 0.88
//   b = 0.0236
//   c = 0.969
//
// Positions are in 10^3 dollars. Missing b / c fall back to the modified
// linear map; A, B, C and D are required for a model.

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "cyclekit/csv.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/model.hpp"

namespace cyclekit {

using ParamMap = std::map<std::string, double>;

inline ParamMap read_params(std::istream &in) {
    ParamMap out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const auto body = csv::trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key(csv::trim(body.substr(0, eq)));
        const std::string value(csv::trim(body.substr(eq + 1)));
        if (key.empty()) throw ParseError("empty key", line_no);
        out[key] = csv::parse_double(value, line_no);
    }
    return out;
}

inline ParamMap read_params_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return read_params(in);
}

inline void write_params(std::ostream &os, const ParamMap &params, const std::string &comment = {}) {
    if (!comment.empty()) os << "# " << comment << '\n';
    for (const auto &[k, v] : params) os << k << " = " << csv::format_number(v, 17) << '\n';
}

inline Model model_from_params(const ParamMap &p) {
    auto need = [&](const char *key) {
        const auto it = p.find(key);
        if (it == p.end()) throw ValidationError(std::string("parameter file lacks '") + key + "'");
        return it->second;
    };
    Model m;
    m.odi = {need("A"), need("B"), need("C"), need("D")};
    m.lm = presets::modified_linear_map();
    if (auto it = p.find("b"); it != p.end()) m.lm.b = it->second;
    if (auto it = p.find("c"); it != p.end()) m.lm.c = it->second;
    m.validate();
    return m;
}

inline ParamMap params_of(const OdiParams &o) { return {{"A", o.A}, {"B", o.B}, {"C", o.C}, {"D", o.D}}; }
inline ParamMap params_of(const LinearMap &l) { return {{"b", l.b}, {"c", l.c}}; }

} // namespace cyclekit
