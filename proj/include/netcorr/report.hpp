#pragma once

#include <string>
#include <vector>

#include "netcorr/stats.hpp"

namespace netcorr {

/// Styling for all renderers in one place. Rendering is pure: byte-identical
/// output for identical inputs, no timestamps.
struct PlotStyle {
    int width = 640;
    int height = 480;
    int margin = 56;
    double marker_radius = 4.0;
    double outlier_k = 2.0;    // |residual| > k * sd flags a scatter outlier
    bool label_outliers = true;
    int font_size = 12;
    std::string font = "Helvetica, Arial, sans-serif";
    std::string color_hh = "#c0392b"; // quadrant colours
    std::string color_hl = "#e67e22";
    std::string color_lh = "#27ae60";
    std::string color_ll = "#2980b9";
    std::string color_axis = "#333333";
    std::string color_zero = "#bbbbbb";
    std::string color_marker = "#2166ac";    // correlogram / histogram base
    std::string color_highlight = "#e8861d"; // significant-bin highlight
};

/// Moran scatter SVG: z against its lag, zero lines separating the four
/// quadrants, a dotted through-origin line with the scatter's slope (equals
/// the Moran index for row-normalized W), points coloured by quadrant.
/// With `p_values` (aligned to scatter entries) points with p < alpha are
/// solid and the rest hollow. Points whose residual from the slope line
/// exceeds outlier_k standard deviations get a text label (`labels` aligned
/// to scatter entries; node indices when empty).
void render_scatter(const MoranScatter& scatter, const std::string& out_path,
                    const std::vector<double>& p_values = {},
                    const std::vector<std::string>& labels = {}, double alpha = 0.01,
                    const PlotStyle& style = {});

/// Correlogram SVG: I(d) against d; markers solid when p < alpha, hollow
/// otherwise; distances with no value leave a gap in the polyline.
void render_correlogram(const std::vector<CorrelogramPoint>& points, double alpha,
                        const std::string& out_path, const PlotStyle& style = {});

/// Histogram of node Moran indices; bins holding at least one node with
/// p < alpha are highlighted. NaN values (absent nodes) are skipped;
/// p_values is aligned to `values` (empty for no highlighting).
void render_local_histogram(const std::vector<double>& values,
                            const std::vector<double>& p_values, double alpha,
                            const std::string& out_path, const PlotStyle& style = {});

} // namespace netcorr
