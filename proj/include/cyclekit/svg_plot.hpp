#pragma once

// Minimal SVG line-plot writer: axes with ticks, polylines, point markers,
// vertical reference lines and a legend.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclekit/csv.hpp"

namespace cyclekit::svg {

struct Series {
    Series() = default;
    Series(std::string label_, std::vector<std::pair<double, double>> points_,
           std::string color_ = "#1f77b4", std::string dash_ = {}, bool markers_ = false)
        : label(std::move(label_)), points(std::move(points_)), color(std::move(color_)),
          dash(std::move(dash_)), markers(markers_) {}

    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    std::string dash;     ///< stroke-dasharray, empty for solid
    bool markers = false; ///< draw points instead of a line
};

struct VLine {
    double x = 0.0;
    std::string label;
    std::string color = "#d62728";
};

class LinePlot {
public:
    LinePlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    LinePlot &add(Series s) {
        series_.push_back(std::move(s));
        return *this;
    }
    LinePlot &add(VLine v) {
        vlines_.push_back(std::move(v));
        return *this;
    }
    LinePlot &y_range(double lo, double hi) {
        y_fixed_ = {lo, hi};
        has_y_fixed_ = true;
        return *this;
    }

    void write(std::ostream &os) const {
        double x0 = inf(), x1 = -inf(), y0 = inf(), y1 = -inf();
        for (const auto &s : series_)
            for (const auto &[x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        for (const auto &v : vlines_) {
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
        }
        if (has_y_fixed_) std::tie(y0, y1) = y_fixed_;
        if (!(x0 < x1)) {
            x0 = (std::isfinite(x0) ? x0 : 0.0) - 1.0;
            x1 = x0 + 2.0;
        }
        if (!(y0 < y1)) {
            y0 = (std::isfinite(y0) ? y0 : 0.0) - 1.0;
            y1 = y0 + 2.0;
        }
        const auto xt = ticks(x0, x1), yt = ticks(y0, y1);
        x0 = std::min(x0, xt.front());
        x1 = std::max(x1, xt.back());
        y0 = std::min(y0, yt.front());
        y1 = std::max(y1, yt.back());

        auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * kPlotW; };
        auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * kPlotH; };

        os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")"
           << kHeight << R"(" font-family="sans-serif" font-size="12">)" << '\n';
        os << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
        os << R"(<text x=")" << kWidth / 2 << R"(" y="20" text-anchor="middle" font-size="14">)"
           << escape(title_) << "</text>\n";

        os << "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
        for (double t : xt)
            if (t >= x0 && t <= x1) line(os, px(t), kTop, px(t), kTop + kPlotH);
        for (double t : yt)
            if (t >= y0 && t <= y1) line(os, kLeft, py(t), kLeft + kPlotW, py(t));
        os << "</g>\n";
        os << R"(<rect x=")" << kLeft << R"(" y=")" << kTop << R"(" width=")" << kPlotW
           << R"(" height=")" << kPlotH << R"(" fill="none" stroke="black"/>)" << '\n';
        for (double t : xt)
            if (t >= x0 && t <= x1)
                os << R"(<text x=")" << num(px(t)) << R"(" y=")" << kTop + kPlotH + 16
                   << R"(" text-anchor="middle">)" << csv::format_number(t, 4) << "</text>\n";
        for (double t : yt)
            if (t >= y0 && t <= y1)
                os << R"(<text x=")" << kLeft - 6 << R"(" y=")" << num(py(t) + 4)
                   << R"(" text-anchor="end">)" << csv::format_number(t, 4) << "</text>\n";
        os << R"(<text x=")" << kLeft + kPlotW / 2 << R"(" y=")" << kHeight - 10
           << R"(" text-anchor="middle">)" << escape(x_label_) << "</text>\n";
        os << R"(<text x="16" y=")" << kTop + kPlotH / 2 << R"(" text-anchor="middle" transform="rotate(-90 16 )"
           << kTop + kPlotH / 2 << ")\">" << escape(y_label_) << "</text>\n";

        os << R"(<clipPath id="plot"><rect x=")" << kLeft << R"(" y=")" << kTop << R"(" width=")"
           << kPlotW << R"(" height=")" << kPlotH << R"("/></clipPath>)" << '\n';
        os << "<g clip-path=\"url(#plot)\">\n";
        for (const auto &v : vlines_) {
            os << R"(<line x1=")" << num(px(v.x)) << R"(" y1=")" << kTop << R"(" x2=")" << num(px(v.x))
               << R"(" y2=")" << kTop + kPlotH << R"(" stroke=")" << v.color
               << R"(" stroke-dasharray="4 3"/>)" << '\n';
        }
        for (const auto &s : series_) {
            if (s.markers) {
                for (const auto &[x, y] : s.points) {
                    if (!std::isfinite(x) || !std::isfinite(y)) continue;
                    os << R"(<circle cx=")" << num(px(x)) << R"(" cy=")" << num(py(y))
                       << R"(" r="2.5" fill=")" << s.color << R"("/>)" << '\n';
                }
                continue;
            }
            // Non-finite points break the polyline into segments.
            std::ostringstream pts;
            auto flush = [&] {
                if (pts.str().empty()) return;
                os << R"(<polyline fill="none" stroke=")" << s.color << R"(" stroke-width="1.5")";
                if (!s.dash.empty()) os << R"( stroke-dasharray=")" << s.dash << '"';
                os << R"( points=")" << pts.str() << R"("/>)" << '\n';
                pts.str("");
            };
            for (const auto &[x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) {
                    flush();
                    continue;
                }
                pts << num(px(x)) << ',' << num(py(y)) << ' ';
            }
            flush();
        }
        os << "</g>\n";

        double ly = kTop + 14;
        for (const auto &s : series_) {
            if (s.label.empty()) continue;
            const double lx = kLeft + kPlotW - 150;
            if (s.markers)
                os << R"(<circle cx=")" << lx + 10 << R"(" cy=")" << num(ly - 4) << R"(" r="2.5" fill=")"
                   << s.color << R"("/>)" << '\n';
            else
                os << R"(<line x1=")" << lx << R"(" y1=")" << num(ly - 4) << R"(" x2=")" << lx + 20
                   << R"(" y2=")" << num(ly - 4) << R"(" stroke=")" << s.color << R"(" stroke-width="1.5"/>)"
                   << '\n';
            os << R"(<text x=")" << lx + 26 << R"(" y=")" << num(ly) << R"(">)" << escape(s.label)
               << "</text>\n";
            ly += 16;
        }
        for (const auto &v : vlines_) {
            if (v.label.empty()) continue;
            os << R"(<text x=")" << num(px(v.x) + 4) << R"(" y=")" << kTop + 12 << R"(" fill=")" << v.color
               << R"(">)" << escape(v.label) << "</text>\n";
        }
        os << "</svg>\n";
    }

private:
    static constexpr int kWidth = 640, kHeight = 440;
    static constexpr int kLeft = 70, kTop = 34, kPlotW = 540, kPlotH = 350;

    static double inf() { return std::numeric_limits<double>::infinity(); }
    static std::string num(double v) { return csv::format_number(v, 6); }

    static void line(std::ostream &os, double x1, double y1, double x2, double y2) {
        os << R"(<line x1=")" << num(x1) << R"(" y1=")" << num(y1) << R"(" x2=")" << num(x2)
           << R"(" y2=")" << num(y2) << R"("/>)" << '\n';
    }

    static std::string escape(const std::string &s) {
        std::string out;
        for (char c : s) {
            switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
            }
        }
        return out;
    }

    /// "Nice" tick positions (1, 2, 5 x 10^k) covering [lo, hi].
    static std::vector<double> ticks(double lo, double hi) {
        const double raw = (hi - lo) / 6.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        std::vector<double> out;
        for (double t = std::floor(lo / step) * step; t <= hi + 0.5 * step; t += step)
            out.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
        return out;
    }

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    std::vector<VLine> vlines_;
    std::pair<double, double> y_fixed_{0.0, 1.0};
    bool has_y_fixed_ = false;
};

} // namespace cyclekit::svg
