#pragma once

#include "feature_matrix.hpp"
#include "transform.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace autonorm {

enum class SeriesKind {
    Kde,
    Qq,
    Scatter,
    Jitter,
};

struct PlotSeries {
    SeriesKind kind = SeriesKind::Scatter;
    std::vector<std::pair<double, double>> points;
    std::string label;
};

/// Gaussian kernel density estimate on an equispaced grid spanning
/// [min - 3h, max + 3h], bandwidth h from Silverman's rule
/// 0.9 * min(std, IQR/1.34) * n^(-1/5). Throws DegenerateInput for
/// constant input, InvalidArgument for n < 2 or eval_points < 2.
PlotSeries kde_curve(std::span<const double> x, std::size_t eval_points);

/// One point per datum: (value, y_scale * (i + 0.5) / n) with i the
/// position in the input, for visual separation under a density curve.
PlotSeries jitter_points(std::span<const double> x, double y_scale);

/// Sample-vs-theoretical normal quantile pairs: subsample m points without
/// replacement (seeded, skipped entirely when m = n), sort, and pair the
/// i-th order statistic with std_normal_quantile((i - 0.5) / m) on the
/// horizontal axis. Throws DomainError when m > n, InvalidArgument when
/// m < 2.
PlotSeries qq_points(std::span<const double> z, std::size_t m, std::uint64_t seed);

struct RenderOptions {
    int width = 640;
    int height = 480;
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Emit a self-contained SVG (axes, series, a dashed 45-degree reference
/// line whenever a qq series is present) plus a tab-separated sidecar of
/// the raw series next to it (.dat). Throws InvalidArgument on an empty
/// series list, IoError on write failure.
void render_svg(const std::vector<PlotSeries>& series, const std::string& path,
                const RenderOptions& opts = {});

struct DiagnosticsOptions {
    std::string directory = "diagnostics";
    std::string scatter_a;  // optional feature pair for scatter plots
    std::string scatter_b;
    std::uint64_t seed = 1;
    std::size_t qq_max_points = 1000;
    std::size_t kde_points = 400;
};

/// Per-feature before/after KDE and QQ plots plus the optional scatter
/// pair, written under opts.directory. "Before" KDE uses the raw feature,
/// "before" QQ the beta = 0 pipeline output; "after" uses the transformed
/// feature. Degenerate or too-short features are skipped.
void write_diagnostics(const FeatureMatrix& input, const FeatureMatrix& transformed,
                       const TransformConfig& cfg, const DiagnosticsOptions& opts);

}  // namespace autonorm
