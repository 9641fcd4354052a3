#pragma once

// Shared test helpers: an independent naive Anderson-Darling oracle and
// seeded data generators. The oracle is deliberately a direct transcription
// of the order-statistic formula with its own Phi evaluation; it must stay
// decoupled from the library implementation it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

inline double oracle_phi(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Long-double erfc keeps the deep tail representable for raw heavy-tailed
// input (double erfc underflows once |z| > ~37.5) without any branches.
inline double naive_anderson_darling(std::vector<double> z) {
    std::sort(z.begin(), z.end());
    const std::size_t n = z.size();
    const long double root_half = std::sqrt(0.5L);
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double log_phi = static_cast<double>(
            std::log(0.5L * std::erfc(-static_cast<long double>(z[i - 1]) * root_half)));
        const double log_comp = static_cast<double>(
            std::log(0.5L * std::erfc(static_cast<long double>(z[n - i]) * root_half)));
        acc += (2.0 * static_cast<double>(i) - 1.0) / static_cast<double>(n) *
               (log_phi + log_comp);
    }
    return -static_cast<double>(n) - acc;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double mean = 0.0,
                                    double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mean, sd);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

inline std::vector<double> lognormal(std::size_t n, std::uint64_t seed) {
    std::vector<double> out = gaussian(n, seed);
    for (double& v : out) v = std::exp(v);
    return out;
}

inline std::vector<double> uniform(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                   double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

inline std::vector<double> bimodal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> left(-2.0, 0.5);
    std::normal_distribution<double> right(2.0, 0.5);
    std::bernoulli_distribution pick(0.5);
    std::vector<double> out(n);
    for (double& v : out) v = pick(rng) ? right(rng) : left(rng);
    return out;
}

inline std::vector<double> negated(std::vector<double> x) {
    for (double& v : x) v = -v;
    return x;
}

}  // namespace testsupport
