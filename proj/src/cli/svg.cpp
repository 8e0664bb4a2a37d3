#include <vatom/cli.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vatom::cli {

namespace {

constexpr double kWidth = 720, kHeight = 420, kMargin = 50;
constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s)
{
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

std::string render_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<PlotSeries>& series)
{
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!x.empty()) {
        xmin = *std::min_element(x.begin(), x.end());
        xmax = *std::max_element(x.begin(), x.end());
    }
    bool first = true;
    for (const auto& s : series)
        for (double v : s.y) {
            if (!std::isfinite(v))
                continue;
            ymin = first ? v : std::min(ymin, v);
            ymax = first ? v : std::max(ymax, v);
            first = false;
        }
    if (xmax <= xmin)
        xmax = xmin + 1;
    if (ymax <= ymin)
        ymax = ymin + 1;

    auto px = [&](double v) { return kMargin + (v - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
    auto py = [&](double v) { return kHeight - kMargin - (v - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); };

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"12\">\n",
                  kWidth, kHeight);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  kMargin, kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
    out += buf;
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\">" + escape(title) + "</text>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 12) +
           "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\">%.4g</text><text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text>\n",
                  kMargin, kHeight - kMargin + 15, xmin, kWidth - kMargin, kHeight - kMargin + 15, xmax);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%g\">%.3g</text><text x=\"4\" y=\"%g\">%.3g</text>\n",
                  kHeight - kMargin, ymin, kMargin + 4, ymax);
    out += buf;

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* colour = kColours[k % std::size(kColours)];
        out += "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"";
        out += colour;
        out += "\" points=\"";
        const std::size_t n = std::min(x.size(), series[k].y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(series[k].y[i]))
                continue;
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(series[k].y[i]));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">", kWidth - kMargin - 120,
                      kMargin + 16.0 * static_cast<double>(k + 1), colour);
        out += buf;
        out += escape(series[k].label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace vatom::cli
