#include "transform.hpp"

#include "anderson_darling.hpp"
#include "errors.hpp"
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace autonorm {

namespace {

constexpr double kLog4Pi = 2.5310242469692908;  // ln(4*pi)

TransformOutcome degenerate_outcome(double beta, std::size_t n, bool score_zero_vector) {
    TransformOutcome out;
    out.beta = beta;
    out.transformed.assign(n, 0.0);
    out.degenerate = true;
    out.ad_stat = score_zero_vector ? anderson_darling(out.transformed)
                                    : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace

void validate_config(const TransformConfig& cfg) {
    if (!(cfg.gumbel_percentile > 0.0 && cfg.gumbel_percentile < 1.0)) {
        throw DomainError("config: gumbel_percentile must lie in (0, 1)");
    }
    if (cfg.beta_grid.empty()) {
        return;  // empty = default grid, which satisfies the invariants
    }
    bool has_zero = false;
    std::unordered_set<double> seen;
    for (double b : cfg.beta_grid) {
        if (!std::isfinite(b)) {
            throw InvalidArgument("config: beta grid entries must be finite");
        }
        if (!seen.insert(b).second) {
            throw InvalidArgument("config: beta grid entries must be distinct");
        }
        if (b == 0.0) has_zero = true;
    }
    if (!has_zero) {
        throw InvalidArgument("config: beta grid must contain 0");
    }
}

std::vector<double> shifted_log_transform(std::span<const double> x, double beta) {
    if (x.empty()) {
        throw InvalidArgument("shifted_log_transform: empty input");
    }
    if (beta == 0.0) {
        return {x.begin(), x.end()};
    }
    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *min_it;
    const double hi = *max_it;
    const double range = hi - lo;
    if (range == 0.0) {
        throw DegenerateInput("shifted_log_transform: zero range with beta != 0");
    }
    const double shift = range / std::abs(beta);
    std::vector<double> out;
    out.reserve(x.size());
    if (beta > 0.0) {
        for (double v : x) out.push_back(std::log((v - lo) + shift));
    } else {
        for (double v : x) out.push_back(-std::log((hi - v) + shift));
    }
    return out;
}

std::vector<double> standardize_median_mad(std::span<const double> x) {
    const double med = stats::median(x);
    const double mad = stats::mean_abs_dev_from_median(x);
    std::vector<double> out;
    out.reserve(x.size());
    if (mad == 0.0) {
        out.assign(x.size(), 0.0);
        return out;
    }
    for (double v : x) out.push_back((v - med) / mad);
    return out;
}

double gumbel_threshold(std::size_t n, double p) {
    if (n < 2) {
        throw DomainError("gumbel_threshold: need n >= 2");
    }
    const double two_log_n = 2.0 * std::log(static_cast<double>(n));
    const double root = std::sqrt(two_log_n);
    const double a_n = 1.0 / root;
    const double b_n = root - (std::log(std::log(static_cast<double>(n))) + kLog4Pi) / root;
    return stats::gumbel_quantile(p) * a_n + b_n;
}

WinsoriseResult winsorise(std::span<const double> x, double threshold) {
    if (!(threshold > 0.0)) {
        throw DomainError("winsorise: threshold must be positive");
    }
    WinsoriseResult result;
    result.values.reserve(x.size());
    for (double v : x) {
        if (v > threshold) {
            result.values.push_back(threshold);
            ++result.count;
        } else if (v < -threshold) {
            result.values.push_back(-threshold);
            ++result.count;
        } else {
            result.values.push_back(v);
        }
    }
    return result;
}

TransformOutcome transform_feature(std::span<const double> x, double beta,
                                   const TransformConfig& cfg) {
    if (x.empty()) {
        throw InvalidArgument("transform_feature: empty input");
    }
    const std::size_t n = x.size();

    std::vector<double> shifted;
    if (beta == 0.0) {
        shifted.assign(x.begin(), x.end());
    } else {
        try {
            shifted = shifted_log_transform(x, beta);
        } catch (const DegenerateInput&) {
            return degenerate_outcome(beta, n, false);
        }
    }

    const double mad = stats::mean_abs_dev_from_median(shifted);
    if (mad == 0.0) {
        // Constant feature; the zero vector is still scored at beta = 0 so
        // selection has a finite value to fall back to.
        return degenerate_outcome(beta, n, beta == 0.0);
    }

    TransformOutcome out;
    out.beta = beta;
    out.transformed = standardize_median_mad(shifted);

    if (cfg.winsorise) {
        const double limit = gumbel_threshold(n, cfg.gumbel_percentile);
        out.threshold = limit;
        WinsoriseResult clipped = winsorise(out.transformed, limit);
        out.winsorised_count = clipped.count;
        if (clipped.count > 0) {
            const auto ms = stats::mean_and_std(clipped.values);
            if (ms.stddev == 0.0) {
                return degenerate_outcome(beta, n, false);
            }
            for (double& v : clipped.values) v = (v - ms.mean) / ms.stddev;
        }
        out.transformed = std::move(clipped.values);
    }

    out.ad_stat = anderson_darling(out.transformed);
    return out;
}

}  // namespace autonorm
