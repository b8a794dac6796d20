#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "respro/errors.hpp"
#include "respro/portfolio.hpp"
#include "respro/series.hpp"
#include "respro/smoothing.hpp"

namespace respro {

struct PlotSpec {
    std::string title;
    std::string y_axis_label = "mean production";
    bool more_info = false;
    int width = 800;
    int height = 600;

    void validate() const {
        if (width <= 0 || height <= 0) throw std::invalid_argument("plot dimensions must be positive");
    }
};

struct Rgb {
    int r, g, b;

    std::string hex() const {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
        return buf;
    }
};

/// Piecewise-linear rainbow map on [0,1]: blue at 0, cyan at 0.375, yellow at
/// 0.625, red at 1.
inline Rgb rainbow_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    struct Stop {
        double t;
        double r, g, b;
    };
    static constexpr Stop stops[] = {
        {0.0, 0, 0, 255}, {0.375, 0, 255, 255}, {0.625, 255, 255, 0}, {1.0, 255, 0, 0}};
    for (std::size_t i = 1; i < std::size(stops); ++i) {
        if (t <= stops[i].t) {
            const double a = (t - stops[i - 1].t) / (stops[i].t - stops[i - 1].t);
            auto mix = [a](double lo, double hi) {
                return static_cast<int>(std::lround(lo + a * (hi - lo)));
            };
            return {mix(stops[i - 1].r, stops[i].r), mix(stops[i - 1].g, stops[i].g),
                    mix(stops[i - 1].b, stops[i].b)};
        }
    }
    return {255, 0, 0};
}

/// Correlation coefficient -> colormap coordinate.
inline double correlation_to_unit(double rho) { return (rho + 1.0) / 2.0; }

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Linear data->pixel mapping over a padded range.
struct Axis {
    double lo = 0.0, hi = 1.0;
    double px_lo = 0.0, px_hi = 1.0;  // px_lo maps lo, px_hi maps hi

    double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

inline Axis padded_axis(double lo, double hi, double px_lo, double px_hi, double pad = 0.05) {
    if (lo > hi) std::swap(lo, hi);
    double span = hi - lo;
    if (span == 0.0) span = hi != 0.0 ? std::abs(hi) : 1.0;
    return {lo - pad * span, hi + pad * span, px_lo, px_hi};
}

/// Tick positions on a 1-2-5 ladder, aiming for about `target` intervals.
inline std::vector<double> ticks_125(double lo, double hi, int target = 6) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = 10.0 * mag;
    for (double m : {1.0, 2.0, 5.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        out.push_back(t == 0.0 ? 0.0 : t);  // normalize -0
    return out;
}

inline std::string tick_label(double v, double step) {
    char buf[32];
    const int decimals = step >= 1.0 ? 0 : std::min(6, static_cast<int>(std::ceil(-std::log10(step))));
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

class SvgWriter {
public:
    SvgWriter(int width, int height) {
        body_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                 std::to_string(width) + "\" height=\"" + std::to_string(height) +
                 "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
                 "\">\n";
        body_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
                 std::to_string(height) + "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        body_ += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
                 px(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + px(width) + "\"/>\n";
    }

    void polyline(std::span<const std::pair<double, double>> pts, const std::string& stroke,
                  double width, const std::string& cls) {
        body_ += "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + stroke +
                 "\" stroke-width=\"" + px(width) + "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ += ' ';
            body_ += px(pts[i].first) + "," + px(pts[i].second);
        }
        body_ += "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& cls = "") {
        body_ += "<rect";
        if (!cls.empty()) body_ += " class=\"" + cls + "\"";
        body_ += " x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) + "\" height=\"" +
                 px(h) + "\" fill=\"" + fill + "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill, const std::string& cls) {
        body_ += "<circle class=\"" + cls + "\" cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" +
                 px(r) + "\" fill=\"" + fill + "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 12.0,
              const std::string& anchor = "start", const std::string& transform = "") {
        body_ += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\"" +
                 " font-size=\"" + px(size) + "\" text-anchor=\"" + anchor + "\"";
        if (!transform.empty()) body_ += " transform=\"" + transform + "\"";
        body_ += ">" + xml_escape(content) + "</text>\n";
    }

    std::string finish() && { return std::move(body_) + "</svg>\n"; }

private:
    std::string body_;
};

inline void draw_frame(SvgWriter& svg, double x0, double y0, double x1, double y1) {
    svg.line(x0, y1, x1, y1, "black");  // bottom
    svg.line(x0, y0, x0, y1, "black");  // left
    svg.line(x1, y0, x1, y1, "black");  // right
    svg.line(x0, y0, x1, y0, "black");  // top
}

// Fixed qualitative palette, cycled per series.
inline const char* series_color(std::size_t i) {
    static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                              "#bcbd22", "#17becf"};
    return palette[i % std::size(palette)];
}

}  // namespace detail

/// Raw series with their smoothed baselines, one color per series (baseline
/// shares it). Legend lists the raw series names, right of the plot area.
inline std::string plot_series(std::span<const std::pair<AnnualSeries, BaselineSeries>> series,
                               const PlotSpec& spec = {}) {
    spec.validate();
    if (series.empty()) throw InvalidSeriesError("nothing to plot");
    for (const auto& [raw, base] : series)
        if (!std::ranges::equal(raw.years(), base.years()))
            throw InvalidSeriesError("series '" + raw.name() + "' and its baseline are not year-aligned");

    const double ml = 80, mr = 190, mt = 50, mb = 50;
    const double x0 = ml, x1 = spec.width - mr, y0 = mt, y1 = spec.height - mb;

    double xmin = series[0].first.year(0), xmax = xmin;
    double ymin = series[0].first.value(0), ymax = ymin;
    for (const auto& [raw, base] : series) {
        for (std::size_t i = 0; i < raw.size(); ++i) {
            xmin = std::min(xmin, static_cast<double>(raw.year(i)));
            xmax = std::max(xmax, static_cast<double>(raw.year(i)));
            ymin = std::min({ymin, raw.value(i), base.value(i)});
            ymax = std::max({ymax, raw.value(i), base.value(i)});
        }
    }
    const detail::Axis xa = detail::padded_axis(xmin, xmax, x0, x1);
    const detail::Axis ya = detail::padded_axis(ymin, ymax, y1, y0);

    detail::SvgWriter svg(spec.width, spec.height);
    detail::draw_frame(svg, x0, y0, x1, y1);

    const auto xticks = detail::ticks_125(xa.lo, xa.hi);
    const double xstep = xticks.size() > 1 ? xticks[1] - xticks[0] : 1.0;
    for (double t : xticks) {
        svg.line(xa.map(t), y1, xa.map(t), y1 + 5, "black");
        svg.text(xa.map(t), y1 + 18, detail::tick_label(t, xstep), 11, "middle");
    }
    const auto yticks = detail::ticks_125(ya.lo, ya.hi);
    const double ystep = yticks.size() > 1 ? yticks[1] - yticks[0] : 1.0;
    for (double t : yticks) {
        svg.line(x0 - 5, ya.map(t), x0, ya.map(t), "black");
        svg.text(x0 - 8, ya.map(t) + 4, detail::tick_label(t, ystep), 11, "end");
    }
    if (!spec.y_axis_label.empty())
        svg.text(22, (y0 + y1) / 2, spec.y_axis_label, 12, "middle",
                 "rotate(-90 22," + detail::px((y0 + y1) / 2) + ")");
    if (!spec.title.empty()) svg.text((x0 + x1) / 2, mt - 20, spec.title, 15, "middle");

    std::vector<std::pair<double, double>> pts;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& [raw, base] = series[si];
        const std::string color = detail::series_color(si);
        pts.clear();
        for (std::size_t i = 0; i < raw.size(); ++i)
            pts.emplace_back(xa.map(raw.year(i)), ya.map(raw.value(i)));
        svg.polyline(pts, color, 1.8, "series");
        pts.clear();
        for (std::size_t i = 0; i < base.size(); ++i)
            pts.emplace_back(xa.map(base.year(i)), ya.map(base.value(i)));
        svg.polyline(pts, color, 1.0, "baseline");

        const double ly = y0 + 16 + 18 * static_cast<double>(si);
        svg.line(x1 + 10, ly - 4, x1 + 34, ly - 4, color, 1.8);
        svg.text(x1 + 40, ly, raw.name(), 11);
    }
    return std::move(svg).finish();
}

/// Resilience-diversity chart: mean-production bars on the left axis,
/// individual-resilience dots and the aggregated-resilience line on the right
/// axis. With more_info, bars are colored by pairwise anomaly correlation
/// (first bar fixed green), x labels carry (individual;aggregated) lengths,
/// and a colorbar spans [-1, 1].
inline std::string plot_resilience_diversity(const PortfolioReport& report,
                                             const PlotSpec& spec = {}) {
    spec.validate();
    const std::size_t n = report.size();
    if (n == 0) throw InvalidSeriesError("empty portfolio report");

    const double ml = 80, mr = spec.more_info ? 160 : 80, mt = 50, mb = 130;
    const double x0 = ml, x1 = spec.width - mr, y0 = mt, y1 = spec.height - mb;

    const double mean_max = *std::max_element(report.individual_means.begin(),
                                              report.individual_means.end());
    const detail::Axis ya = detail::padded_axis(0.0, mean_max, y1, y0, 0.05);

    double rmin = report.individual_resilience[0], rmax = rmin;
    for (double v : report.individual_resilience) {
        rmin = std::min(rmin, v);
        rmax = std::max(rmax, v);
    }
    for (double v : report.aggregated_resilience) {
        rmin = std::min(rmin, v);
        rmax = std::max(rmax, v);
    }
    const detail::Axis ra = detail::padded_axis(rmin, rmax, y1, y0);

    const double slot = (x1 - x0) / static_cast<double>(n);
    auto slot_center = [&](std::size_t i) { return x0 + slot * (static_cast<double>(i) + 0.5); };

    detail::SvgWriter svg(spec.width, spec.height);

    const std::string green = Rgb{0, 255, 0}.hex();
    for (std::size_t i = 0; i < n; ++i) {
        std::string fill = green;
        if (spec.more_info && i > 0) {
            const auto& rho = report.pairwise_correlation[i];
            fill = rho ? rainbow_color(correlation_to_unit(*rho)).hex() : "#999999";
        }
        const double top = ya.map(report.individual_means[i]);
        svg.rect(slot_center(i) - 0.4 * slot, top, 0.8 * slot, y1 - top, fill, "bar");
    }

    std::vector<std::pair<double, double>> line_pts;
    for (std::size_t i = 0; i < n; ++i)
        line_pts.emplace_back(slot_center(i), ra.map(report.aggregated_resilience[i]));
    svg.polyline(line_pts, "red", 1.8, "aggregated");
    for (std::size_t i = 0; i < n; ++i)
        svg.circle(slot_center(i), ra.map(report.individual_resilience[i]), 4, "black", "dot");

    detail::draw_frame(svg, x0, y0, x1, y1);

    for (std::size_t i = 0; i < n; ++i) {
        std::string label = report.labels[i];
        if (spec.more_info)
            label += "(" + std::to_string(report.individual_lengths[i]) + ";" +
                     std::to_string(report.aggregated_lengths[i]) + ")";
        const double cx = slot_center(i);
        svg.line(cx, y1, cx, y1 + 4, "black");
        svg.text(cx + 4, y1 + 10, label, 11, "end",
                 "rotate(-90 " + detail::px(cx + 4) + "," + detail::px(y1 + 10) + ")");
    }

    const auto yticks = detail::ticks_125(ya.lo, ya.hi);
    const double ystep = yticks.size() > 1 ? yticks[1] - yticks[0] : 1.0;
    for (double t : yticks) {
        svg.line(x0 - 5, ya.map(t), x0, ya.map(t), "black");
        svg.text(x0 - 8, ya.map(t) + 4, detail::tick_label(t, ystep), 11, "end");
    }
    const auto rticks = detail::ticks_125(ra.lo, ra.hi);
    const double rstep = rticks.size() > 1 ? rticks[1] - rticks[0] : 1.0;
    for (double t : rticks) {
        svg.line(x1, ra.map(t), x1 + 5, ra.map(t), "black");
        svg.text(x1 + 8, ra.map(t) + 4, detail::tick_label(t, rstep), 11, "start");
    }
    if (!spec.y_axis_label.empty())
        svg.text(22, (y0 + y1) / 2, spec.y_axis_label, 12, "middle",
                 "rotate(-90 22," + detail::px((y0 + y1) / 2) + ")");
    svg.text(x1 + 52, (y0 + y1) / 2, "annual production resilience", 12, "middle",
             "rotate(90 " + detail::px(x1 + 52) + "," + detail::px((y0 + y1) / 2) + ")");
    if (!spec.title.empty()) svg.text((x0 + x1) / 2, mt - 20, spec.title, 15, "middle");

    // legend, top-left inside the plot area
    const double lx = x0 + 12;
    svg.rect(lx, y0 + 8, 14, 10, green);
    svg.text(lx + 20, y0 + 17,
             spec.more_info ? "mean prod. and pairwise corr." : "mean production", 11);
    svg.circle(lx + 7, y0 + 31, 4, "black", "legend-dot");
    svg.text(lx + 20, y0 + 35, "individual resilience", 11);
    svg.line(lx, y0 + 48, lx + 14, y0 + 48, "red", 1.8);
    svg.text(lx + 20, y0 + 52, "aggregated resilience", 11);

    if (spec.more_info) {
        const double cb_x = static_cast<double>(spec.width) - 110;
        const double cb_y0 = y0 + 30, cb_y1 = y1 - 30;
        const int samples = 64;
        const double h = (cb_y1 - cb_y0) / samples;
        for (int i = 0; i < samples; ++i) {
            const double t = (static_cast<double>(i) + 0.5) / samples;  // bottom = -1
            svg.rect(cb_x, cb_y1 - (i + 1) * h, 18, h + 0.5, rainbow_color(t).hex(), "colorbar");
        }
        for (double rho : {-1.0, 0.0, 1.0}) {
            const double yx = cb_y1 - correlation_to_unit(rho) * (cb_y1 - cb_y0);
            svg.line(cb_x + 18, yx, cb_x + 23, yx, "black");
            svg.text(cb_x + 26, yx + 4, detail::tick_label(rho, 1.0), 11);
        }
        svg.text(cb_x + 58, (cb_y0 + cb_y1) / 2, "pairwise anomaly correlation", 12, "middle",
                 "rotate(90 " + detail::px(cb_x + 58) + "," + detail::px((cb_y0 + cb_y1) / 2) + ")");
    }
    return std::move(svg).finish();
}

}  // namespace respro
