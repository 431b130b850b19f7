#include "ramsey/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
    void widen() {
        if (!valid()) {
            lo = 0.0;
            hi = 1.0;
            return;
        }
        if (lo == hi) {
            double pad = std::max(1.0, std::fabs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        } else {
            double pad = (hi - lo) * 0.05;
            lo -= pad;
            hi += pad;
        }
    }
};

double nice_step(double span) {
    double raw = span / 4.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

void write_svg_plot(std::ostream& out, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, int width, int height) {
    const double ml = 72, mr = 24, mt = 44, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;

    Range rx, ry;
    for (const auto& s : series) {
        std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.y[i])) continue;
            rx.add(s.x[i]);
            ry.add(s.y[i]);
        }
    }
    rx.widen();
    ry.widen();

    auto px = [&](double v) { return ml + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double v) { return mt + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2.0 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    // grid + ticks
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    double sx = nice_step(rx.hi - rx.lo);
    for (double v = std::ceil(rx.lo / sx) * sx; v <= rx.hi + 1e-12 * sx; v += sx) {
        double X = px(v);
        out << "<line x1=\"" << X << "\" y1=\"" << mt << "\" x2=\"" << X << "\" y2=\""
            << mt + ph << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << X << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
    }
    double sy = nice_step(ry.hi - ry.lo);
    for (double v = std::ceil(ry.lo / sy) * sy; v <= ry.hi + 1e-12 * sy; v += sy) {
        double Y = py(v);
        out << "<line x1=\"" << ml << "\" y1=\"" << Y << "\" x2=\"" << ml + pw
            << "\" y2=\"" << Y << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << Y + 4
            << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    out << "</g>\n";

    // axes
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#000\" "
        << "stroke-width=\"1\"/>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << escape(y_label)
        << "</text>\n";

    // series polylines, split at non-finite samples
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        std::size_t n = std::min(s.x.size(), s.y.size());
        std::string pts;
        auto flush = [&]() {
            if (pts.empty()) return;
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
            pts.clear();
        };
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            pts += buf;
        }
        flush();
    }

    // legend
    double ly = mt + 10;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        double lx = ml + pw - 150;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22
            << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << escape(series[si].label) << "</text>\n";
        ly += 16;
    }

    out << "</svg>\n";
}

void write_svg_plot_file(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<SvgSeries>& series, int width, int height) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_svg_plot(out, title, x_label, y_label, series, width, height);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ramsey
