#pragma once

#include "feature_matrix.hpp"
#include "transform.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace autonorm {

// Features shorter than this skip the grid search and pass through as
// beta = 0 standardization with report.short_input set: the winsorisation
// constants and the Anderson-Darling statistic are asymptotic in n.
inline constexpr std::size_t kMinSearchLength = 8;

/// Default search grid: {0} plus +/-{0.01, 0.05, 0.1, 0.5, 1, 2, 4, 8, 16,
/// 32, 64, 128, 256}, ascending. 27 values, symmetric about 0. Small |beta|
/// means a huge shift (near identity); large |beta| means a small shift
/// (strong log curvature).
std::vector<double> default_beta_grid();

/// Per-feature selection record.
struct FeatureReport {
    std::string feature_name;
    double chosen_beta = 0.0;
    double ad_before = 0.0;   // A2 at beta = 0
    double ad_after = 0.0;    // A2 at the chosen beta; always <= ad_before
    double skewness_before = 0.0;
    double skewness_after = 0.0;
    std::size_t winsorised_count = 0;
    double threshold = 0.0;   // winsorisation threshold L at the chosen beta
    bool degenerate = false;  // constant / zero-dispersion feature
    bool short_input = false; // n < kMinSearchLength: search skipped
    std::size_t n_used = 0;   // finite values entering the statistics
};

struct SelectionResult {
    FeatureReport report;
    // Same length as the input; non-finite input positions are passed
    // through unchanged, every other position carries the transformed value.
    std::vector<double> transformed;
};

/// Run the pipeline for every beta in the grid and keep the one minimizing
/// the Anderson-Darling statistic. Ties break toward smaller |beta|, then
/// toward the sign of the sample skewness; both keys are negation-
/// equivariant, so select_beta(-x) mirrors select_beta(x). Degenerate
/// features come back as zeros with chosen_beta = 0 and the degenerate
/// flag, never as an error.
SelectionResult select_beta(std::span<const double> x, const TransformConfig& cfg);

struct MatrixTransformResult {
    FeatureMatrix matrix;  // same shape, names and orientation as the input
    std::vector<FeatureReport> reports;
};

/// select_beta applied independently to every feature, optionally across
/// `threads` workers (0 = hardware concurrency). Output order matches the
/// input regardless of thread count.
MatrixTransformResult transform_matrix(const FeatureMatrix& m, const TransformConfig& cfg,
                                       unsigned threads = 0);

}  // namespace autonorm
