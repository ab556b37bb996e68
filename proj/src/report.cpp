#include "netcorr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netcorr/detail/text.hpp"
#include "netcorr/error.hpp"

namespace netcorr {

namespace {

/// Fixed two-decimal coordinates keep the files small and byte-stable.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string svg_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

/// Maps a data interval onto a pixel interval.
struct Scale {
    double lo = 0.0, hi = 1.0;
    double px_lo = 0.0, px_hi = 1.0;

    double operator()(double v) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

/// Pad a data range by 5% and make sure it is nonempty and contains zero.
Scale make_scale(double lo, double hi, double px_lo, double px_hi, bool include_zero) {
    if (include_zero) {
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
    }
    if (hi <= lo) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    double pad = 0.05 * (hi - lo);
    return Scale{lo - pad, hi + pad, px_lo, px_hi};
}

class SvgCanvas {
public:
    SvgCanvas(const PlotStyle& style, const std::string& title) : style_(style) {
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
            << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << " "
            << style.height << "\">\n";
        os_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        text(style.width / 2.0, style.margin / 2.0, title, "middle", style.font_size + 2);
    }

    double left() const { return style_.margin; }
    double right() const { return style_.width - style_.margin; }
    double top() const { return style_.margin; }
    double bottom() const { return style_.height - style_.margin; }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0, bool dotted = false) {
        os_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
            << "\" y2=\"" << px(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
            << px(width) << "\"";
        if (dotted) os_ << " stroke-dasharray=\"4 4\"";
        os_ << "/>\n";
    }

    void circle(double x, double y, double r, const std::string& color, bool solid) {
        os_ << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"" << px(r)
            << "\" fill=\"" << (solid ? color : "white") << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        os_ << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w)
            << "\" height=\"" << px(h) << "\" fill=\"" << fill
            << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& anchor = "start",
              int size = 0) {
        os_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"" << style_.font
            << "\" font-size=\"" << (size > 0 ? size : style_.font_size) << "\" text-anchor=\""
            << anchor << "\" fill=\"" << style_.color_axis << "\">" << svg_escape(s)
            << "</text>\n";
    }

    /// Frame, five ticks per axis, and axis titles.
    void axes(const Scale& xs, const Scale& ys, const std::string& x_title,
              const std::string& y_title) {
        line(left(), bottom(), right(), bottom(), style_.color_axis);
        line(left(), top(), left(), bottom(), style_.color_axis);
        for (int t = 0; t <= 4; ++t) {
            double fx = xs.lo + (xs.hi - xs.lo) * t / 4.0;
            double fy = ys.lo + (ys.hi - ys.lo) * t / 4.0;
            double x = xs(fx), y = ys(fy);
            line(x, bottom(), x, bottom() + 4, style_.color_axis);
            text(x, bottom() + 16, tick_label(fx), "middle");
            line(left() - 4, y, left(), y, style_.color_axis);
            text(left() - 6, y + 4, tick_label(fy), "end");
        }
        text((left() + right()) / 2.0, bottom() + 32, x_title, "middle");
        os_ << "<text x=\"" << px(14) << "\" y=\"" << px((top() + bottom()) / 2.0)
            << "\" font-family=\"" << style_.font << "\" font-size=\"" << style_.font_size
            << "\" text-anchor=\"middle\" fill=\"" << style_.color_axis << "\" transform=\"rotate(-90 "
            << px(14) << " " << px((top() + bottom()) / 2.0) << ")\">" << svg_escape(y_title)
            << "</text>\n";
    }

    void write(const std::string& path) {
        os_ << "</svg>\n";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + path);
        out << os_.str();
        if (!out) throw Error("cannot write " + path);
    }

private:
    static std::string tick_label(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        return buf;
    }

    const PlotStyle& style_;
    std::ostringstream os_;
};

} // namespace

void render_scatter(const MoranScatter& scatter, const std::string& out_path,
                    const std::vector<double>& p_values, const std::vector<std::string>& labels,
                    double alpha, const PlotStyle& style) {
    const auto n = scatter.z.size();
    if (n == 0) throw InputError("empty scatter");
    if (!p_values.empty() && p_values.size() != n)
        throw InputError("p-value count does not match scatter");
    if (!labels.empty() && labels.size() != n)
        throw InputError("label count does not match scatter");

    auto [zmin, zmax] = std::minmax_element(scatter.z.begin(), scatter.z.end());
    auto [lmin, lmax] = std::minmax_element(scatter.z_lag.begin(), scatter.z_lag.end());

    SvgCanvas svg(style, "Moran scatter (slope = " + detail::format_double(scatter.slope) + ")");
    Scale xs = make_scale(*zmin, *zmax, svg.left(), svg.right(), true);
    Scale ys = make_scale(*lmin, *lmax, svg.bottom(), svg.top(), true);
    svg.axes(xs, ys, "z", "lagged z");

    // quadrant separators
    svg.line(xs(0.0), svg.top(), xs(0.0), svg.bottom(), style.color_zero);
    svg.line(svg.left(), ys(0.0), svg.right(), ys(0.0), style.color_zero);

    // the regression line through the origin, clipped to the x-range
    svg.line(xs(xs.lo), ys(scatter.slope * xs.lo), xs(xs.hi), ys(scatter.slope * xs.hi),
             style.color_axis, 1.0, true);

    auto quad_color = [&](Quadrant q) -> const std::string& {
        switch (q) {
            case Quadrant::HH: return style.color_hh;
            case Quadrant::HL: return style.color_hl;
            case Quadrant::LH: return style.color_lh;
            case Quadrant::LL: return style.color_ll;
        }
        return style.color_axis;
    };

    // residual spread for outlier labelling
    double ss = 0.0;
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        residual[i] = scatter.z_lag[i] - scatter.slope * scatter.z[i];
        ss += residual[i] * residual[i];
    }
    double sd = std::sqrt(ss / static_cast<double>(n));

    for (std::size_t i = 0; i < n; ++i) {
        bool solid = p_values.empty() || p_values[i] < alpha;
        svg.circle(xs(scatter.z[i]), ys(scatter.z_lag[i]), style.marker_radius,
                   quad_color(scatter.quadrant[i]), solid);
        if (style.label_outliers && sd > 0.0 && std::abs(residual[i]) > style.outlier_k * sd) {
            std::string name =
                labels.empty() ? std::to_string(scatter.nodes[i]) : labels[i];
            svg.text(xs(scatter.z[i]) + style.marker_radius + 2.0, ys(scatter.z_lag[i]) - 4.0,
                     name);
        }
    }

    // legend: only the quadrants that occur
    bool seen[4] = {false, false, false, false};
    for (auto q : scatter.quadrant) seen[static_cast<int>(q)] = true;
    double ly = svg.top() + 6.0;
    for (int qi = 0; qi < 4; ++qi) {
        if (!seen[qi]) continue;
        auto q = static_cast<Quadrant>(qi);
        svg.circle(svg.right() - 60.0, ly, style.marker_radius, quad_color(q), true);
        svg.text(svg.right() - 50.0, ly + 4.0, to_string(q));
        ly += 18.0;
    }

    svg.write(out_path);
}

void render_correlogram(const std::vector<CorrelogramPoint>& points, double alpha,
                        const std::string& out_path, const PlotStyle& style) {
    bool any = std::any_of(points.begin(), points.end(),
                           [](const CorrelogramPoint& p) { return p.value.has_value(); });
    if (!any) throw InputError("correlogram has no points with values");

    double vmin = 0.0, vmax = 0.0;
    int dmax = 1;
    for (const auto& p : points) {
        dmax = std::max(dmax, p.d);
        if (p.value) {
            vmin = std::min(vmin, *p.value);
            vmax = std::max(vmax, *p.value);
        }
    }

    SvgCanvas svg(style, "Moran correlogram");
    Scale xs = make_scale(1.0, static_cast<double>(dmax), svg.left(), svg.right(), false);
    Scale ys = make_scale(vmin, vmax, svg.bottom(), svg.top(), true);
    svg.axes(xs, ys, "distance class d", "I(d)");
    svg.line(svg.left(), ys(0.0), svg.right(), ys(0.0), style.color_zero);

    // connect consecutive present points; absent values break the line
    const CorrelogramPoint* prev = nullptr;
    for (const auto& p : points) {
        if (!p.value) {
            prev = nullptr;
            continue;
        }
        if (prev)
            svg.line(xs(prev->d), ys(*prev->value), xs(p.d), ys(*p.value), style.color_marker);
        prev = &p;
    }
    for (const auto& p : points) {
        if (!p.value) continue;
        bool solid = p.p_value.has_value() && *p.p_value < alpha;
        svg.circle(xs(p.d), ys(*p.value), style.marker_radius, style.color_marker, solid);
    }

    svg.write(out_path);
}

void render_local_histogram(const std::vector<double>& values,
                            const std::vector<double>& p_values, double alpha,
                            const std::string& out_path, const PlotStyle& style) {
    if (!p_values.empty() && p_values.size() != values.size())
        throw InputError("p-value count does not match values");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isnan(values[i])) keep.push_back(i);
    if (keep.empty()) throw InputError("empty histogram");

    double vmin = values[keep.front()], vmax = vmin;
    for (auto i : keep) {
        vmin = std::min(vmin, values[i]);
        vmax = std::max(vmax, values[i]);
    }
    if (vmax <= vmin) vmax = vmin + 1.0;

    int bins = std::clamp(static_cast<int>(std::lround(std::sqrt(double(keep.size())))), 5, 30);
    std::vector<int> count(static_cast<std::size_t>(bins), 0);
    std::vector<bool> hot(static_cast<std::size_t>(bins), false);
    for (auto i : keep) {
        int b = static_cast<int>((values[i] - vmin) / (vmax - vmin) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++count[static_cast<std::size_t>(b)];
        if (!p_values.empty() && p_values[i] < alpha) hot[static_cast<std::size_t>(b)] = true;
    }
    int peak = *std::max_element(count.begin(), count.end());

    SvgCanvas svg(style, "Node Moran indices");
    Scale xs = make_scale(vmin, vmax, svg.left(), svg.right(), false);
    Scale ys = make_scale(0.0, static_cast<double>(peak), svg.bottom(), svg.top(), false);
    svg.axes(xs, ys, "I_i", "nodes");

    double bin_w = (vmax - vmin) / bins;
    for (int b = 0; b < bins; ++b) {
        int c = count[static_cast<std::size_t>(b)];
        if (c == 0) continue;
        double x0 = xs(vmin + b * bin_w);
        double x1 = xs(vmin + (b + 1) * bin_w);
        double y = ys(static_cast<double>(c));
        svg.rect(x0, y, x1 - x0, svg.bottom() - y,
                 hot[static_cast<std::size_t>(b)] ? style.color_highlight : style.color_marker);
    }

    svg.write(out_path);
}

} // namespace netcorr
