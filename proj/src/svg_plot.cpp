#include "ocsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ocsim/errors.hpp"

namespace ocsim {

namespace {

constexpr double kW = 860, kH = 540;
constexpr double kLeft = 95, kRight = 690, kTop = 60, kBottom = 480;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string coord(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Largest "nice" step (1, 2, 2.5 or 5 times a power of ten) that yields at
// least four intervals over the span.
double nice_step(double span) {
    if (span <= 0) return 1.0;
    double raw = span / 4.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.5, 2.0, 1.0})
        if (m * mag <= raw) return m * mag;
    return mag;
}

} // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series, bool log_y) {
    if (series.empty()) throw ArgumentError("chart needs at least one series");

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    bool positive = true;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw ArgumentError("series '" + s.label + "' has mismatched lengths");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.y[i] <= 0) positive = false;
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (first) throw ArgumentError("chart needs at least one point");
    bool use_log = log_y && positive;

    if (use_log) {
        ymin = std::floor(std::log10(ymin));
        ymax = std::ceil(std::log10(ymax));
        if (ymax - ymin < 1) ymax = ymin + 1;
    } else {
        ymin = std::min(0.0, ymin);
        if (ymax <= ymin) ymax = ymin + 1;
        double step = nice_step(ymax - ymin);
        ymax = step * std::ceil(ymax / step + 0.0001);
    }
    if (xmax <= xmin) xmax = xmin + 1;

    auto sx = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
    };
    auto sy = [&](double y) {
        double v = use_log ? std::log10(y) : y;
        return kBottom - (v - ymin) / (ymax - ymin) * (kBottom - kTop);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kW << " "
       << kH << "\" font-family=\"sans-serif\">\n";
    os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"30\" text-anchor=\"middle\" "
          "font-size=\"17\" fill=\"#111\">" << title << "</text>\n";

    // y grid and labels
    if (use_log) {
        for (double e = ymin; e <= ymax + 0.5; e += 1.0) {
            double yy = kBottom - (e - ymin) / (ymax - ymin) * (kBottom - kTop);
            os << "<line x1=\"" << kLeft << "\" y1=\"" << coord(yy) << "\" x2=\""
               << kRight << "\" y2=\"" << coord(yy)
               << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
            os << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(yy + 4)
               << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333\">"
               << num(std::pow(10.0, e)) << "</text>\n";
        }
    } else {
        double step = nice_step(ymax - ymin);
        for (double v = ymin; v <= ymax + step * 0.25; v += step) {
            double yy = sy(v);
            os << "<line x1=\"" << kLeft << "\" y1=\"" << coord(yy) << "\" x2=\""
               << kRight << "\" y2=\"" << coord(yy)
               << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
            os << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(yy + 4)
               << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333\">" << num(v)
               << "</text>\n";
        }
    }

    // x ticks at the union of data x values
    std::vector<double> xticks;
    for (const auto& s : series)
        for (double x : s.x) xticks.push_back(x);
    std::sort(xticks.begin(), xticks.end());
    xticks.erase(std::unique(xticks.begin(), xticks.end()), xticks.end());
    for (double x : xticks) {
        double xx = sx(x);
        os << "<line x1=\"" << coord(xx) << "\" y1=\"" << kBottom << "\" x2=\""
           << coord(xx) << "\" y2=\"" << kBottom + 6
           << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << coord(xx) << "\" y=\"" << kBottom + 22
           << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333\">" << num(x)
           << "</text>\n";
    }

    // axes
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
       << "\" y2=\"" << kBottom << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
       << "\" y2=\"" << kBottom << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 45
       << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"#111\">" << x_label
       << "</text>\n";
    os << "<text x=\"24\" y=\"" << (kTop + kBottom) / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"#111\" transform=\"rotate(-90 24 "
       << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"2.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << coord(sx(s.x[i])) << "," << coord(sy(s.y[i])) << " ";
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << "<circle cx=\"" << coord(sx(s.x[i])) << "\" cy=\""
               << coord(sy(s.y[i])) << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    }

    // legend
    double ly = kTop + 10;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 6];
        os << "<line x1=\"" << kRight + 18 << "\" y1=\"" << ly << "\" x2=\""
           << kRight + 46 << "\" y2=\"" << ly << "\" stroke=\"" << color
           << "\" stroke-width=\"2.5\"/>\n";
        os << "<circle cx=\"" << kRight + 32 << "\" cy=\"" << ly
           << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << kRight + 54 << "\" y=\"" << ly + 4
           << "\" font-size=\"13\" fill=\"#111\">" << series[si].label << "</text>\n";
        ly += 24;
    }
    if (log_y && !positive)
        os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop - 6
           << "\" font-size=\"11\" fill=\"#777\">log scale unavailable "
              "(non-positive values); linear axis shown</text>\n";

    os << "</svg>\n";
    return os.str();
}

} // namespace ocsim
