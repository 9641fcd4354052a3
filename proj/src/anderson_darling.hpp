#pragma once

#include <span>

namespace autonorm {

/// Anderson-Darling distance between the empirical distribution of `values`
/// and the standard normal CDF, in the order-statistic form
///   A2 = -n - (1/n) * sum_{i=1..n} (2i-1) * [lnPhi(z_(i)) + lnPhi(-z_(n+1-i))].
/// Both log terms go through the tail-safe log-CDF, so extreme order
/// statistics contribute their true magnitudes. The input is copied and
/// sorted; ties are fine. Throws InvalidArgument on empty or non-finite
/// input. Larger values mean a stronger departure from normality.
double anderson_darling(std::span<const double> values);

}  // namespace autonorm
