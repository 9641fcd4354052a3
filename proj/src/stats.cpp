#include "stats.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace autonorm::stats {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrtPi = 1.77245385090551602730;

void require_nonempty(std::span<const double> x, const char* op) {
    if (x.empty()) {
        throw InvalidArgument(std::string(op) + ": empty input");
    }
}

}  // namespace

double mean(std::span<const double> x) {
    require_nonempty(x, "mean");
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
    require_nonempty(x, "median");
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double mean_abs_dev_from_median(std::span<const double> x) {
    const double med = median(x);
    double sum = 0.0;
    for (double v : x) sum += std::abs(v - med);
    return sum / static_cast<double>(x.size());
}

MeanStd mean_and_std(std::span<const double> x) {
    if (x.size() < 2) {
        throw DegenerateInput("mean_and_std: need at least 2 values for a standard deviation");
    }
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) {
        const double d = v - m;
        ss += d * d;
    }
    return {m, std::sqrt(ss / static_cast<double>(x.size() - 1))};
}

double sample_skewness(std::span<const double> x) {
    if (x.size() < 2) {
        throw InvalidArgument("sample_skewness: need at least 2 values");
    }
    const double m = mean(x);
    const double n = static_cast<double>(x.size());
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : x) {
        const double d = v - m;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 == 0.0) {
        throw DegenerateInput("sample_skewness: all elements equal");
    }
    return m3 / std::pow(m2, 1.5);
}

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_log_cdf(double z) {
    if (z >= 0.0) {
        // Phi(-z) <= 1/2, so log1p keeps full precision near Phi = 1.
        const double upper_tail = 0.5 * std::erfc(z * kInvSqrt2);
        return std::log1p(-upper_tail);
    }
    const double t = -z * kInvSqrt2;
    if (z > -30.0) {
        // erfc stays normalized down to z ~ -37; plain log is exact enough.
        return std::log(0.5 * std::erfc(t));
    }
    // Deep lower tail: erfc(t) = exp(-t^2) / (t sqrt(pi)) * S(t) with the
    // alternating asymptotic series S(t) = sum (-1)^k (2k-1)!! / (2t^2)^k,
    // truncated once terms fall below 1e-18 relative.
    const double two_t2 = 2.0 * t * t;
    double term = 1.0;
    double series = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term *= -(2.0 * k - 1.0) / two_t2;
        series += term;
        if (std::abs(term) < 1e-18 * series) break;
    }
    return -t * t - std::log(2.0 * t * kSqrtPi) + std::log(series);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_quantile: p must lie in (0, 1)");
    }
    // AS 241 (Wichura 1988), double-precision branch.
    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,
        1.9715909503065514427e3,  1.3731693765509461125e4,
        4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e1,
        6.8718700749205790830e2,  5.3941960214247511077e3,
        2.1213794301586595867e4,  3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0,
        5.76949722146069140550e0, 3.64784832476320460504e0,
        1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                      2.05319162663775882187e0,
        1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0,
        1.78482653991729133580e0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                      5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    auto poly = [](const double (&coef)[8], double r) {
        double v = coef[7];
        for (int i = 6; i >= 0; --i) v = v * r + coef[i];
        return v;
    };

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        value = poly(c, r - 1.6) / poly(d, r - 1.6);
    } else {
        value = poly(e, r - 5.0) / poly(f, r - 5.0);
    }
    return (q < 0.0) ? -value : value;
}

double gumbel_cdf(double x) {
    return std::exp(-std::exp(-x));
}

double gumbel_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("gumbel_quantile: p must lie in (0, 1)");
    }
    return -std::log(-std::log(p));
}

}  // namespace autonorm::stats
