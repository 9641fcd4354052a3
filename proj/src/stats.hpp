#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace autonorm::stats {

/// Arithmetic mean. Throws InvalidArgument on empty input.
double mean(std::span<const double> x);

/// Sample median; for even n the midpoint of the two central order
/// statistics. Throws InvalidArgument on empty input.
double median(std::span<const double> x);

/// (1/n) * sum |x_i - median(x)|. Zero exactly when every element equals
/// the median; callers treat a zero result as a degenerate-scale signal.
double mean_abs_dev_from_median(std::span<const double> x);

struct MeanStd {
    double mean;
    double stddev;
};

/// Sample mean and standard deviation (n-1 divisor).
/// Throws DegenerateInput when n < 2.
MeanStd mean_and_std(std::span<const double> x);

/// Third standardized sample moment with 1/n central moments:
///   g = m3 / m2^(3/2).
/// Antisymmetric under negation. Throws DegenerateInput when all elements
/// are equal (m2 = 0), InvalidArgument when n < 2.
double sample_skewness(std::span<const double> x);

/// Standard normal CDF.
double std_normal_cdf(double z);

/// ln Phi(z), evaluated without underflow for |z| <= 40 to at least 12
/// significant digits. ln(1 - Phi(z)) is std_normal_log_cdf(-z).
double std_normal_log_cdf(double z);

/// Inverse standard normal CDF (Wichura's AS 241 rational approximations,
/// accurate to ~1e-15). Throws DomainError for p outside (0, 1).
double std_normal_quantile(double p);

/// Standard Gumbel CDF, exp(-exp(-x)).
double gumbel_cdf(double x);

/// Standard Gumbel quantile, -ln(-ln p). Throws DomainError for p
/// outside (0, 1).
double gumbel_quantile(double p);

}  // namespace autonorm::stats
