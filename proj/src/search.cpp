#include "search.hpp"

#include "anderson_darling.hpp"
#include "errors.hpp"
#include "stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

namespace autonorm {

namespace {

int sign_of(double v) {
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

// Lexicographic selection key: objective, then mildness of the transform,
// then agreement with the skewness direction, then grid position.
struct CandidateKey {
    double ad;
    double abs_beta;
    int sign_mismatch;
    std::size_t grid_index;

    bool operator<(const CandidateKey& other) const {
        if (ad != other.ad) return ad < other.ad;
        if (abs_beta != other.abs_beta) return abs_beta < other.abs_beta;
        if (sign_mismatch != other.sign_mismatch) return sign_mismatch < other.sign_mismatch;
        return grid_index < other.grid_index;
    }
};

double skewness_or_zero(std::span<const double> x) {
    try {
        return stats::sample_skewness(x);
    } catch (const Error&) {
        return 0.0;  // constant or too short; reported with flags instead
    }
}

void fill_from_outcome(FeatureReport& report, const TransformOutcome& outcome) {
    report.chosen_beta = outcome.beta;
    report.ad_after = outcome.ad_stat;
    report.winsorised_count = outcome.winsorised_count;
    report.threshold = outcome.threshold;
    report.degenerate = outcome.degenerate;
    report.skewness_after = skewness_or_zero(outcome.transformed);
}

}  // namespace

std::vector<double> default_beta_grid() {
    static const double magnitudes[] = {0.01, 0.05, 0.1, 0.5, 1.0,  2.0,  4.0,
                                        8.0,  16.0, 32.0, 64.0, 128.0, 256.0};
    std::vector<double> grid;
    grid.reserve(2 * std::size(magnitudes) + 1);
    for (auto it = std::rbegin(magnitudes); it != std::rend(magnitudes); ++it) {
        grid.push_back(-*it);
    }
    grid.push_back(0.0);
    for (double m : magnitudes) grid.push_back(m);
    return grid;
}

SelectionResult select_beta(std::span<const double> x, const TransformConfig& cfg) {
    validate_config(cfg);
    static const std::vector<double> fallback_grid = default_beta_grid();
    const std::vector<double>& grid = cfg.beta_grid.empty() ? fallback_grid : cfg.beta_grid;

    SelectionResult result;
    FeatureReport& report = result.report;

    std::vector<double> finite;
    finite.reserve(x.size());
    bool has_missing = false;
    for (double v : x) {
        if (std::isfinite(v)) {
            finite.push_back(v);
        } else {
            has_missing = true;
        }
    }
    report.n_used = finite.size();

    auto scatter_back = [&](const std::vector<double>& transformed) {
        if (!has_missing) {
            result.transformed = transformed;
            return;
        }
        result.transformed.assign(x.begin(), x.end());
        std::size_t k = 0;
        for (double& v : result.transformed) {
            if (std::isfinite(v)) v = transformed[k++];
        }
    };

    if (finite.empty()) {
        report.degenerate = true;
        const double inf = std::numeric_limits<double>::infinity();
        report.ad_before = inf;
        report.ad_after = inf;
        result.transformed.assign(x.begin(), x.end());
        return result;
    }

    report.skewness_before = skewness_or_zero(finite);

    if (finite.size() < kMinSearchLength) {
        const TransformOutcome base = transform_feature(finite, 0.0, cfg);
        report.short_input = true;
        report.ad_before = base.ad_stat;
        fill_from_outcome(report, base);
        scatter_back(base.transformed);
        return result;
    }

    const int skew_sign = sign_of(report.skewness_before);

    TransformOutcome best;
    CandidateKey best_key{std::numeric_limits<double>::infinity(), 0.0, 0, 0};
    bool have_best = false;
    double ad_at_zero = std::numeric_limits<double>::infinity();

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double beta = grid[gi];
        if (cfg.restrict_by_skewness && beta != 0.0 && skew_sign != 0 &&
            sign_of(beta) != skew_sign) {
            continue;
        }
        TransformOutcome outcome = transform_feature(finite, beta, cfg);
        if (beta == 0.0) ad_at_zero = outcome.ad_stat;
        const double ad = std::isnan(outcome.ad_stat)
                              ? std::numeric_limits<double>::infinity()
                              : outcome.ad_stat;
        const CandidateKey key{ad, std::abs(beta),
                               sign_of(beta) == skew_sign ? 0 : 1, gi};
        if (!have_best || key < best_key) {
            best = std::move(outcome);
            best_key = key;
            have_best = true;
        }
    }

    report.ad_before = ad_at_zero;
    fill_from_outcome(report, best);
    scatter_back(best.transformed);
    return result;
}

void validate_matrix(const FeatureMatrix& m) {
    if (m.features.empty()) {
        throw InvalidArgument("matrix: no features");
    }
    if (m.n_objects == 0) {
        throw InvalidArgument("matrix: features must have length >= 1");
    }
    for (const Feature& f : m.features) {
        if (f.values.size() != m.n_objects) {
            throw InvalidArgument("matrix: feature '" + f.name + "' has length " +
                                  std::to_string(f.values.size()) + ", expected " +
                                  std::to_string(m.n_objects));
        }
    }
}

MatrixTransformResult transform_matrix(const FeatureMatrix& m, const TransformConfig& cfg,
                                       unsigned threads) {
    validate_matrix(m);
    validate_config(cfg);

    const std::size_t count = m.features.size();
    std::vector<SelectionResult> rows(count);

    unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

    auto process = [&](std::size_t i) {
        rows[i] = select_beta(m.features[i].values, cfg);
        rows[i].report.feature_name = m.features[i].name;
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    try {
                        process(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    MatrixTransformResult out;
    out.matrix.n_objects = m.n_objects;
    out.matrix.orientation = m.orientation;
    out.matrix.features.reserve(count);
    out.reports.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.matrix.features.push_back({m.features[i].name, std::move(rows[i].transformed)});
        out.reports.push_back(std::move(rows[i].report));
    }
    return out;
}

}  // namespace autonorm
