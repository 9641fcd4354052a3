#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace autonorm {

/// Settings shared by the per-beta pipeline and the grid search.
/// An empty beta_grid means "use default_beta_grid()".
struct TransformConfig {
    bool winsorise = true;
    double gumbel_percentile = 0.95;
    std::vector<double> beta_grid;
    // Restrict candidate betas to the sign of the sample skewness instead of
    // searching the whole family. Off by default: the objective already
    // prefers the correct branch.
    bool restrict_by_skewness = false;
};

/// Throws InvalidArgument / DomainError when the config violates its
/// invariants (percentile in (0,1); grid finite, distinct, containing 0).
void validate_config(const TransformConfig& cfg);

/// Result of running the pipeline on one feature at one beta.
struct TransformOutcome {
    double beta = 0.0;
    std::vector<double> transformed;
    double ad_stat = 0.0;
    std::size_t winsorised_count = 0;
    // Winsorisation threshold L in standardized units; 0 when winsorisation
    // was disabled or the outcome is degenerate.
    double threshold = 0.0;
    // Constant input (zero range) or zero dispersion after the transform.
    // The transformed vector is all zeros; ad_stat is +inf except at
    // beta = 0, where the zero vector is still scored.
    bool degenerate = false;
};

/// Shifted-logarithm family. With R = max - min and shift = R/|beta|:
///   beta > 0:  log(x_i - min + shift)
///   beta < 0: -log(max - x_i + shift)
///   beta = 0:  identity (the standardize step supplies the beta -> 0 limit)
/// Strictly increasing in x_i for every beta; natural log. Throws
/// DegenerateInput when R = 0 and beta != 0.
std::vector<double> shifted_log_transform(std::span<const double> x, double beta);

/// (x_i - median) / mean_abs_dev_from_median, or the all-zeros vector when
/// the deviation is zero.
std::vector<double> standardize_median_mad(std::span<const double> x);

/// Winsorisation threshold from the Gumbel limit of the maximum of n iid
/// standard normals:
///   b_n = (2 ln n)^(1/2) - (ln ln n + ln 4pi) / (2 ln n)^(1/2)
///   a_n = (2 ln n)^(-1/2)
///   L   = gumbel_quantile(p) * a_n + b_n
/// Throws DomainError when n < 2 or p outside (0, 1).
double gumbel_threshold(std::size_t n, double p);

struct WinsoriseResult {
    std::vector<double> values;
    std::size_t count = 0;  // number of clipped elements
};

/// Clip every element to [-threshold, threshold], preserving sign.
/// Throws DomainError when threshold <= 0.
WinsoriseResult winsorise(std::span<const double> x, double threshold);

/// Full per-beta pipeline: shifted log, median/MAD standardization,
/// optional winsorisation at gumbel_threshold(n, cfg.gumbel_percentile),
/// mean/std re-standardization only when something was clipped, then the
/// Anderson-Darling score of the final vector. Degeneracy is reported in
/// the outcome, never thrown.
TransformOutcome transform_feature(std::span<const double> x, double beta,
                                   const TransformConfig& cfg);

}  // namespace autonorm
