#include "anderson_darling.hpp"

#include "errors.hpp"
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace autonorm {

double anderson_darling(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("anderson_darling: empty input");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("anderson_darling: non-finite input value");
        }
    }
    std::vector<double> z(values.begin(), values.end());
    std::sort(z.begin(), z.end());

    const std::size_t n = z.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double weight = 2.0 * static_cast<double>(i + 1) - 1.0;
        sum += weight * (stats::std_normal_log_cdf(z[i]) +
                         stats::std_normal_log_cdf(-z[n - 1 - i]));
    }
    return -static_cast<double>(n) - sum / static_cast<double>(n);
}

}  // namespace autonorm
