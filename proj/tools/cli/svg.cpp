#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace wgarch::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 95;
constexpr double kRight = 200;
constexpr double kTop = 50;
constexpr double kBottom = 60;

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Round tick spacing for the range, five to ten ticks.
double tick_step(double span) {
    const double raw = span / 8.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0}) {
        if (raw <= m * magnitude) return m * magnitude;
    }
    return 10.0 * magnitude;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_smile_svg(const std::vector<SmileCurve>& curves, const std::string& title) {
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& curve : curves) {
        for (const auto& r : curve.rows) {
            if (!std::isfinite(r.implied_vol)) continue;
            x_lo = std::min(x_lo, r.moneyness);
            x_hi = std::max(x_hi, r.moneyness);
            y_lo = std::min(y_lo, r.implied_vol);
            y_hi = std::max(y_hi, r.implied_vol);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
    // Pad flat smiles so the axis still has a readable range.
    const double pad = std::max(0.1 * (y_hi - y_lo), 1e-3);
    y_lo -= pad;
    y_hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = tick_step(x_hi - x_lo);
    for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
        const double x = px(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
            << kTop + plot_h + 5 << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">" << fixed(t, 2)
            << "</text>\n";
    }
    const double ys = tick_step(y_hi - y_lo);
    const int y_digits = std::max(2, static_cast<int>(-std::floor(std::log10(ys))) + 2);
    for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-9 * ys; t += ys) {
        const double y = py(t);
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
            << "\" stroke=\"black\"/>";
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fixed(t, y_digits)
            << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\">moneyness K/S</text>\n";
    svg << "<text transform=\"translate(20," << kTop + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">implied volatility</text>\n";

    double legend_y = kTop + 10;
    for (const auto& curve : curves) {
        const char* dash = curve.dashed ? " stroke-dasharray=\"6 4\"" : "";
        svg << "<polyline fill=\"none\" stroke=\"" << curve.color << "\" stroke-width=\"1.8\"" << dash
            << " points=\"";
        bool first = true;
        for (const auto& r : curve.rows) {
            if (!std::isfinite(r.implied_vol)) continue;
            if (!first) svg << ' ';
            svg << fixed(px(r.moneyness), 2) << ',' << fixed(py(r.implied_vol), 2);
            first = false;
        }
        svg << "\"/>\n";
        const double lx = kLeft + plot_w + 15;
        svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 30 << "\" y2=\"" << legend_y
            << "\" stroke=\"" << curve.color << "\" stroke-width=\"1.8\"" << dash << "/>";
        svg << "<text x=\"" << lx + 36 << "\" y=\"" << legend_y + 4 << "\">" << escape(curve.label) << "</text>\n";
        legend_y += 20;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace wgarch::cli
