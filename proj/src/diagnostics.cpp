#include "diagnostics.hpp"

#include "errors.hpp"
#include "stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace autonorm {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double interpolated_quantile(std::vector<double> sorted, double q) {
    const double idx = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
    if (lo == hi) return sorted[lo];
    const double t = idx - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * t;
}

double silverman_bandwidth(std::span<const double> x) {
    const auto ms = stats::mean_and_std(x);
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = interpolated_quantile(sorted, 0.75) - interpolated_quantile(sorted, 0.25);
    double scale = ms.stddev;
    if (iqr > 0.0) scale = std::min(scale, iqr / 1.34);
    if (scale == 0.0) {
        throw DegenerateInput("kde_curve: zero-spread input");
    }
    return 0.9 * scale * std::pow(static_cast<double>(x.size()), -0.2);
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Fixed two-decimal pixel coordinates keep the SVG byte-stable.
std::string px(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

const char* kind_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::Kde: return "kde";
        case SeriesKind::Qq: return "qq";
        case SeriesKind::Scatter: return "scatter";
        case SeriesKind::Jitter: return "jitter";
    }
    return "unknown";
}

const char* series_color(std::size_t index) {
    static const char* palette[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    return palette[index % std::size(palette)];
}

std::string sidecar_path(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".svg") == 0) {
        return path.substr(0, path.size() - 4) + ".dat";
    }
    return path + ".dat";
}

std::string slugify(const std::string& name) {
    std::string slug;
    slug.reserve(name.size());
    for (char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
        slug.push_back(keep ? c : '_');
    }
    if (slug.empty()) slug = "feature";
    return slug;
}

std::vector<double> finite_values(const std::vector<double>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (std::isfinite(v)) out.push_back(v);
    }
    return out;
}

}  // namespace

PlotSeries kde_curve(std::span<const double> x, std::size_t eval_points) {
    if (x.size() < 2) {
        throw InvalidArgument("kde_curve: need at least 2 values");
    }
    if (eval_points < 2) {
        throw InvalidArgument("kde_curve: need at least 2 evaluation points");
    }
    const double h = silverman_bandwidth(x);
    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *min_it - 3.0 * h;
    const double hi = *max_it + 3.0 * h;
    const double step = (hi - lo) / static_cast<double>(eval_points - 1);
    const double norm = 1.0 / (static_cast<double>(x.size()) * h);

    PlotSeries series;
    series.kind = SeriesKind::Kde;
    series.points.reserve(eval_points);
    for (std::size_t i = 0; i < eval_points; ++i) {
        const double t = lo + step * static_cast<double>(i);
        double density = 0.0;
        for (double v : x) {
            const double u = (t - v) / h;
            density += std::exp(-0.5 * u * u);
        }
        series.points.emplace_back(t, density * norm * kInvSqrt2Pi);
    }
    return series;
}

PlotSeries jitter_points(std::span<const double> x, double y_scale) {
    PlotSeries series;
    series.kind = SeriesKind::Jitter;
    series.points.reserve(x.size());
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        series.points.emplace_back(x[i], y_scale * (static_cast<double>(i) + 0.5) / n);
    }
    return series;
}

PlotSeries qq_points(std::span<const double> z, std::size_t m, std::uint64_t seed) {
    if (m > z.size()) {
        throw DomainError("qq_points: subsample size exceeds input size");
    }
    if (m < 2) {
        throw InvalidArgument("qq_points: need at least 2 points");
    }

    std::vector<double> sample;
    sample.reserve(m);
    if (m == z.size()) {
        sample.assign(z.begin(), z.end());
    } else {
        // Selection sampling with an explicit bit-derived uniform, so the
        // subsample is identical across platforms for a given seed.
        std::mt19937_64 rng(seed);
        auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::size_t needed = m;
        std::size_t pool = z.size();
        for (std::size_t i = 0; i < z.size() && needed > 0; ++i, --pool) {
            if (pool <= needed || unit() * static_cast<double>(pool) < static_cast<double>(needed)) {
                sample.push_back(z[i]);
                --needed;
            }
        }
    }
    std::sort(sample.begin(), sample.end());

    PlotSeries series;
    series.kind = SeriesKind::Qq;
    series.points.reserve(m);
    const double denom = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / denom;
        series.points.emplace_back(stats::std_normal_quantile(p), sample[i]);
    }
    return series;
}

void render_svg(const std::vector<PlotSeries>& series, const std::string& path,
                const RenderOptions& opts) {
    if (series.empty()) {
        throw InvalidArgument("render_svg: no series");
    }
    for (const PlotSeries& s : series) {
        if (s.points.empty()) {
            throw InvalidArgument("render_svg: series '" + s.label + "' has no points");
        }
    }

    double x_min = series[0].points[0].first, x_max = x_min;
    double y_min = series[0].points[0].second, y_max = y_min;
    for (const PlotSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    const bool has_qq = std::any_of(series.begin(), series.end(), [](const PlotSeries& s) {
        return s.kind == SeriesKind::Qq;
    });
    if (has_qq) {
        // Square up the data window so the reference line is meaningful.
        const double lo = std::min(x_min, y_min);
        const double hi = std::max(x_max, y_max);
        x_min = y_min = lo;
        x_max = y_max = hi;
    }
    if (x_max == x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    const double x_pad = 0.05 * (x_max - x_min);
    const double y_pad = 0.05 * (y_max - y_min);
    x_min -= x_pad;
    x_max += x_pad;
    y_min -= y_pad;
    y_max += y_pad;

    const double margin_left = 56, margin_right = 16, margin_top = 28, margin_bottom = 44;
    const double plot_w = opts.width - margin_left - margin_right;
    const double plot_h = opts.height - margin_top - margin_bottom;
    auto map_x = [&](double x) { return margin_left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto map_y = [&](double y) {
        return margin_top + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n";
    svg << "<rect width=\"" << opts.width << "\" height=\"" << opts.height
        << "\" fill=\"white\"/>\n";
    if (!opts.title.empty()) {
        svg << "<text x=\"" << px(opts.width / 2.0)
            << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
            << opts.title << "</text>\n";
    }

    // Axes and ticks.
    svg << "<g stroke=\"#333333\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top + plot_h) << "\" x2=\""
        << px(margin_left + plot_w) << "\" y2=\"" << px(margin_top + plot_h) << "\"/>\n";
    svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top) << "\" x2=\""
        << px(margin_left) << "\" y2=\"" << px(margin_top + plot_h) << "\"/>\n";
    svg << "</g>\n";
    const int n_ticks = 5;
    svg << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333333\">\n";
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / n_ticks;
        const double fy = y_min + (y_max - y_min) * i / n_ticks;
        svg << "<line x1=\"" << px(map_x(fx)) << "\" y1=\"" << px(margin_top + plot_h)
            << "\" x2=\"" << px(map_x(fx)) << "\" y2=\"" << px(margin_top + plot_h + 4)
            << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << px(map_x(fx)) << "\" y=\"" << px(margin_top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
        svg << "<line x1=\"" << px(margin_left - 4) << "\" y1=\"" << px(map_y(fy)) << "\" x2=\""
            << px(margin_left) << "\" y2=\"" << px(map_y(fy)) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << px(margin_left - 6) << "\" y=\"" << px(map_y(fy) + 3)
            << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
    }
    svg << "</g>\n";
    if (!opts.x_label.empty()) {
        svg << "<text x=\"" << px(margin_left + plot_w / 2.0) << "\" y=\""
            << px(opts.height - 8.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << opts.x_label << "</text>\n";
    }
    if (!opts.y_label.empty()) {
        svg << "<text x=\"14\" y=\"" << px(margin_top + plot_h / 2.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "transform=\"rotate(-90 14 "
            << px(margin_top + plot_h / 2.0) << ")\">" << opts.y_label << "</text>\n";
    }

    if (has_qq) {
        const double lo = std::max(x_min, y_min);
        const double hi = std::min(x_max, y_max);
        svg << "<line x1=\"" << px(map_x(lo)) << "\" y1=\"" << px(map_y(lo)) << "\" x2=\""
            << px(map_x(hi)) << "\" y2=\"" << px(map_y(hi))
            << "\" stroke=\"red\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = series_color(si);
        if (s.kind == SeriesKind::Kde) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points) {
                svg << px(map_x(x)) << ',' << px(map_y(y)) << ' ';
            }
            svg << "\"/>\n";
        } else {
            const double radius = s.kind == SeriesKind::Jitter ? 1.5 : 2.0;
            const char* fill = s.kind == SeriesKind::Jitter ? "#2ca02c" : color;
            svg << "<g fill=\"" << fill << "\" fill-opacity=\"0.7\">\n";
            for (const auto& [x, y] : s.points) {
                svg << "<circle cx=\"" << px(map_x(x)) << "\" cy=\"" << px(map_y(y)) << "\" r=\""
                    << radius << "\"/>\n";
            }
            svg << "</g>\n";
        }
        if (!s.label.empty()) {
            svg << "<text x=\"" << px(margin_left + plot_w - 4)
                << "\" y=\"" << px(margin_top + 14.0 * (si + 1))
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
                << color << "\">" << s.label << "</text>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << svg.str();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }

    std::ofstream dat(sidecar_path(path));
    if (!dat) {
        throw IoError("cannot open '" + sidecar_path(path) + "' for writing");
    }
    dat << "series\tkind\tx\ty\n";
    for (const PlotSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            dat << s.label << '\t' << kind_name(s.kind) << '\t' << format_number(x) << '\t'
                << format_number(y) << '\n';
        }
    }
    if (!dat) {
        throw IoError("write to '" + sidecar_path(path) + "' failed");
    }
}

void write_diagnostics(const FeatureMatrix& input, const FeatureMatrix& transformed,
                       const TransformConfig& cfg, const DiagnosticsOptions& opts) {
    validate_matrix(input);
    validate_matrix(transformed);
    if (input.features.size() != transformed.features.size()) {
        throw InvalidArgument("diagnostics: input/transformed feature counts differ");
    }

    int scatter_a = -1;
    int scatter_b = -1;
    const bool want_scatter = !opts.scatter_a.empty() || !opts.scatter_b.empty();
    if (want_scatter) {
        for (std::size_t i = 0; i < input.features.size(); ++i) {
            if (input.features[i].name == opts.scatter_a) scatter_a = static_cast<int>(i);
            if (input.features[i].name == opts.scatter_b) scatter_b = static_cast<int>(i);
        }
        if (scatter_a < 0 || scatter_b < 0) {
            throw InvalidArgument("diagnostics: unknown scatter feature '" +
                                  (scatter_a < 0 ? opts.scatter_a : opts.scatter_b) + "'");
        }
    }

    std::filesystem::create_directories(opts.directory);

    std::vector<std::string> slugs;
    slugs.reserve(input.features.size());
    for (std::size_t i = 0; i < input.features.size(); ++i) {
        std::string slug = slugify(input.features[i].name);
        if (std::find(slugs.begin(), slugs.end(), slug) != slugs.end()) {
            slug += "_" + std::to_string(i);
        }
        slugs.push_back(std::move(slug));
    }

    auto out_path = [&](const std::string& stem) {
        return (std::filesystem::path(opts.directory) / (stem + ".svg")).string();
    };

    auto emit_kde = [&](const std::vector<double>& values, const std::string& stem,
                        const std::string& title) {
        PlotSeries curve = kde_curve(values, opts.kde_points);
        curve.label = "density";
        double peak = 0.0;
        for (const auto& [x, y] : curve.points) peak = std::max(peak, y);
        PlotSeries dots = jitter_points(values, 0.15 * peak);
        dots.label = "data";
        RenderOptions render;
        render.title = title;
        render.x_label = "value";
        render.y_label = "density";
        render_svg({curve, dots}, out_path(stem), render);
    };

    auto emit_qq = [&](const std::vector<double>& values, const std::string& stem,
                       const std::string& title) {
        const std::size_t m = std::min(opts.qq_max_points, values.size());
        PlotSeries points = qq_points(values, m, opts.seed);
        points.label = "quantiles";
        RenderOptions render;
        render.title = title;
        render.x_label = "theoretical quantile";
        render.y_label = "sample quantile";
        render_svg({points}, out_path(stem), render);
    };

    for (std::size_t i = 0; i < input.features.size(); ++i) {
        const std::vector<double> raw = finite_values(input.features[i].values);
        const std::vector<double> after = finite_values(transformed.features[i].values);
        if (raw.size() < 2 || after.size() < 2) continue;
        const std::string& name = input.features[i].name;

        try {
            emit_kde(raw, slugs[i] + "_kde_before", name + " (before)");
            emit_kde(after, slugs[i] + "_kde_after", name + " (after)");
            const std::vector<double> baseline = transform_feature(raw, 0.0, cfg).transformed;
            emit_qq(baseline, slugs[i] + "_qq_before", name + " (standardized only)");
            emit_qq(after, slugs[i] + "_qq_after", name + " (after)");
        } catch (const DegenerateInput&) {
            continue;  // constant feature: nothing worth plotting
        }
    }

    if (want_scatter) {
        auto scatter_series = [&](const FeatureMatrix& m, const std::string& label) {
            PlotSeries s;
            s.kind = SeriesKind::Scatter;
            s.label = label;
            const auto& a = m.features[static_cast<std::size_t>(scatter_a)].values;
            const auto& b = m.features[static_cast<std::size_t>(scatter_b)].values;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (std::isfinite(a[i]) && std::isfinite(b[i])) s.points.emplace_back(a[i], b[i]);
            }
            if (s.points.empty()) {
                throw InvalidArgument("diagnostics: scatter pair has no finite points");
            }
            return s;
        };
        const std::string stem =
            "scatter_" + slugs[static_cast<std::size_t>(scatter_a)] + "_" +
            slugs[static_cast<std::size_t>(scatter_b)];
        RenderOptions render;
        render.x_label = opts.scatter_a;
        render.y_label = opts.scatter_b;
        render.title = opts.scatter_a + " vs " + opts.scatter_b + " (before)";
        render_svg({scatter_series(input, "before")}, out_path(stem + "_before"), render);
        render.title = opts.scatter_a + " vs " + opts.scatter_b + " (after)";
        render_svg({scatter_series(transformed, "after")}, out_path(stem + "_after"), render);
    }
}

}  // namespace autonorm
