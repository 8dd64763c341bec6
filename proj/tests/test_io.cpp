#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "cyclekit/csv.hpp"
#include "cyclekit/params_file.hpp"
#include "cyclekit/svg_plot.hpp"

using namespace cyclekit;

TEST(Csv, SplitTrimsCells) {
    const auto cells = csv::split(" 1960 , 8000\r");
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0], "1960");
    EXPECT_EQ(cells[1], "8000");
    EXPECT_EQ(csv::split("a,,b").size(), 3u);
}

TEST(Csv, StrictNumberParsing) {
    EXPECT_DOUBLE_EQ(csv::parse_double("1.5e3", 1), 1500.0);
    EXPECT_THROW(csv::parse_double("12x", 4), ParseError);
    EXPECT_THROW(csv::parse_double("", 4), ParseError);
    EXPECT_THROW(csv::parse_double("inf", 4), ParseError);
    try {
        csv::parse_int("19.5", 7);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 7);
    }
}

TEST(Csv, SixSignificantDigits) {
    EXPECT_EQ(csv::format_number(3.14159265), "3.14159");
    EXPECT_EQ(csv::format_number(-0.0), "0");
    EXPECT_EQ(csv::format_number(1.57e6), "1.57e+06");
    EXPECT_EQ(csv::format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(csv::format_optional(std::nullopt), "");
}

TEST(ParamsFile, RoundTrip) {
    auto p = params_of(presets::case_iii().odi);
    for (const auto &[k, v] : params_of(presets::case_iii().lm)) p[k] = v;
    std::stringstream ss;
    write_params(ss, p, "case iii");
    const auto back = read_params(ss);
    EXPECT_EQ(back, p);
    const auto m = model_from_params(back);
    EXPECT_EQ(m.odi, presets::case_iii().odi);
    EXPECT_EQ(m.lm, presets::case_iii().lm);
}

TEST(ParamsFile, CommentsBlanksAndDefaults) {
    std::istringstream in("# fitted\n\nA = -1\nB=30 # amplitude\n C = 1.8\nD = 0.92\n");
    const auto m = model_from_params(read_params(in));
    EXPECT_EQ(m.odi, presets::case_iii().odi);
    EXPECT_EQ(m.lm, presets::modified_linear_map());
}

TEST(ParamsFile, Errors) {
    std::istringstream bad("A -1\n");
    EXPECT_THROW(read_params(bad), ParseError);
    std::istringstream missing("A = 1\nB = 2\nC = 3\n");
    EXPECT_THROW(model_from_params(read_params(missing)), ValidationError);
    std::istringstream invalid("A = 1\nB = -2\nC = 3\nD = 0\n");
    EXPECT_THROW(model_from_params(read_params(invalid)), ValidationError);
}

TEST(Svg, WellFormedDocument) {
    svg::LinePlot plot("T(E) <cases>", "E", "T");
    plot.add(svg::Series{"case i", {{0.1, 7.0}, {1.0, 5.5}, {10.0, 4.0}}});
    plot.add(svg::Series{"gap", {{0.1, 6.0}, {0.5, std::nan("")}, {1.0, 5.0}}, "#2ca02c", "4 2"});
    plot.add(svg::Series{"pts", {{0.2, 6.5}}, "#000000", "", true});
    plot.add(svg::VLine{0.0061, "separatrix"});
    std::ostringstream os;
    plot.write(os);
    const auto s = os.str();
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_NE(s.find("&lt;cases&gt;"), std::string::npos);
    EXPECT_NE(s.find("separatrix"), std::string::npos);
    EXPECT_NE(s.find("<circle"), std::string::npos);
    // The NaN splits the dashed series into two polylines.
    std::size_t dashed = 0;
    for (auto pos = s.find("stroke-dasharray=\"4 2\""); pos != std::string::npos;
         pos = s.find("stroke-dasharray=\"4 2\"", pos + 1))
        ++dashed;
    EXPECT_EQ(dashed, 2u);
    EXPECT_EQ(s.find("nan"), std::string::npos);
}

TEST(Svg, EmptyPlotStillRenders) {
    std::ostringstream os;
    svg::LinePlot("empty", "x", "y").write(os);
    EXPECT_NE(os.str().find("</svg>"), std::string::npos);
}
