#include "transform.hpp"

#include "anderson_darling.hpp"
#include "errors.hpp"
#include "stats.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

using namespace autonorm;

namespace {

bool rank_preserved(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (x[order[k - 1]] < x[order[k]] && !(y[order[k - 1]] <= y[order[k]])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("shifted_log_transform branch hand values") {
    const std::vector<double> x{0.0, 1.0};
    auto pos = shifted_log_transform(x, 1.0);
    CHECK(pos[0] == doctest::Approx(0.0));
    CHECK(pos[1] == doctest::Approx(std::log(2.0)));

    auto neg = shifted_log_transform(x, -1.0);
    CHECK(neg[0] == doctest::Approx(-std::log(2.0)));
    CHECK(neg[1] == doctest::Approx(0.0));

    const std::vector<double> any{3.7, -2.1, 5.5};
    auto identity = shifted_log_transform(any, 0.0);
    CHECK(identity == any);
}

TEST_CASE("shifted_log_transform degenerate and monotone behaviour") {
    CHECK_THROWS_AS(shifted_log_transform(std::vector<double>{2, 2, 2}, 1.0), DegenerateInput);
    CHECK(shifted_log_transform(std::vector<double>{2, 2, 2}, 0.0) ==
          std::vector<double>{2, 2, 2});

    for (double beta : {-64.0, -2.0, -0.01, 0.01, 0.5, 8.0, 256.0}) {
        auto x = testsupport::uniform(100, 31, -5, 17);
        std::sort(x.begin(), x.end());
        const auto y = shifted_log_transform(x, beta);
        for (std::size_t i = 1; i < y.size(); ++i) {
            CHECK(y[i - 1] < y[i]);  // strictly increasing on distinct input
        }
    }
}

TEST_CASE("shifted_log_transform mirrors exactly") {
    const auto x = testsupport::lognormal(200, 17);
    for (double beta : {0.05, 1.0, 32.0}) {
        const auto fwd = shifted_log_transform(x, beta);
        const auto mirrored = shifted_log_transform(testsupport::negated(x), -beta);
        REQUIRE(fwd.size() == mirrored.size());
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            CHECK(mirrored[i] == -fwd[i]);
        }
    }
}

TEST_CASE("standardize_median_mad hand values and post-conditions") {
    const auto z = standardize_median_mad(std::vector<double>{1, 2, 3});
    CHECK(z[0] == doctest::Approx(-1.5));
    CHECK(z[1] == doctest::Approx(0.0));
    CHECK(z[2] == doctest::Approx(1.5));

    CHECK(standardize_median_mad(std::vector<double>{9, 9, 9}) ==
          std::vector<double>{0, 0, 0});

    const auto out = standardize_median_mad(testsupport::lognormal(400, 3));
    CHECK(stats::median(out) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(stats::mean_abs_dev_from_median(out) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gumbel_threshold values and monotonicity") {
    CHECK(gumbel_threshold(100, 0.95) == doctest::Approx(2.6763498526391453).epsilon(1e-10));
    CHECK(gumbel_threshold(16, 0.95) == doctest::Approx(2.1082574935992447).epsilon(1e-10));
    CHECK(gumbel_threshold(16, 0.95) > 0.0);

    double prev = 0.0;
    bool first = true;
    for (double p : {0.5, 0.8, 0.9, 0.95, 0.99}) {
        const double limit = gumbel_threshold(1000, p);
        if (!first) CHECK(limit > prev);
        prev = limit;
        first = false;
    }

    CHECK_THROWS_AS(gumbel_threshold(1, 0.95), DomainError);
    CHECK_THROWS_AS(gumbel_threshold(100, 0.0), DomainError);
    CHECK_THROWS_AS(gumbel_threshold(100, 1.0), DomainError);
}

TEST_CASE("winsorise clips symmetrically and counts") {
    const auto r = winsorise(std::vector<double>{-5.0, 0.0, 1.0}, 2.6763);
    CHECK(r.values == std::vector<double>{-2.6763, 0.0, 1.0});
    CHECK(r.count == 1);

    const std::vector<double> tame{-1.0, 0.5, 2.0};
    const auto untouched = winsorise(tame, 2.5);
    CHECK(untouched.values == tame);
    CHECK(untouched.count == 0);

    const auto z = testsupport::gaussian(500, 9, 0, 3);
    const auto fwd = winsorise(z, 2.0);
    const auto mirrored = winsorise(testsupport::negated(z), 2.0);
    CHECK(mirrored.count == fwd.count);
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(mirrored.values[i] == -fwd.values[i]);
        CHECK(std::abs(fwd.values[i]) <= 2.0);
    }

    CHECK_THROWS_AS(winsorise(tame, 0.0), DomainError);
}

TEST_CASE("transform_feature degenerate paths") {
    TransformConfig cfg;
    const std::vector<double> constant(12, 3.14);

    const auto at_two = transform_feature(constant, 2.0, cfg);
    CHECK(at_two.degenerate);
    CHECK(at_two.transformed == std::vector<double>(12, 0.0));
    CHECK(std::isinf(at_two.ad_stat));

    // At beta = 0 the zero vector is still scored, so selection can fall
    // back to it: A2 of n zeros is n * (2 ln 2 - 1).
    const auto at_zero = transform_feature(constant, 0.0, cfg);
    CHECK(at_zero.degenerate);
    CHECK(at_zero.transformed == std::vector<double>(12, 0.0));
    CHECK(at_zero.ad_stat == doctest::Approx(12.0 * 0.3862943611198906).epsilon(1e-12));
}

TEST_CASE("transform_feature beta 0 on a tiny vector matches the worked example") {
    TransformConfig cfg;  // winsorisation on
    const auto out = transform_feature(std::vector<double>{1, 2, 3}, 0.0, cfg);
    CHECK(out.transformed[0] == doctest::Approx(-1.5));
    CHECK(out.transformed[1] == doctest::Approx(0.0));
    CHECK(out.transformed[2] == doctest::Approx(1.5));
    CHECK(out.winsorised_count == 0);  // L(3, 0.95) = 1.715 exceeds 1.5
    CHECK(out.threshold == doctest::Approx(1.7151327137906109).epsilon(1e-10));
    CHECK_FALSE(out.degenerate);
}

TEST_CASE("concave transform improves the objective on right-skewed data") {
    TransformConfig cfg;
    const auto x = testsupport::lognormal(1000, 2024);
    const auto curved = transform_feature(x, 4.0, cfg);
    const auto baseline = transform_feature(x, 0.0, cfg);
    CHECK(curved.ad_stat < baseline.ad_stat);
}

TEST_CASE("transform_feature preserves ranks at every grid beta") {
    TransformConfig cfg;
    const auto x = testsupport::lognormal(300, 55);
    for (double beta : {-256.0, -8.0, -0.5, 0.0, 0.01, 1.0, 64.0}) {
        const auto out = transform_feature(x, beta, cfg);
        REQUIRE_FALSE(out.degenerate);
        CHECK(rank_preserved(x, out.transformed));
    }
}

TEST_CASE("transform_feature mirror antisymmetry") {
    TransformConfig cfg;
    const auto x = testsupport::lognormal(500, 77);
    const auto neg = testsupport::negated(x);
    for (double beta : {0.0, 0.1, 2.0, 128.0}) {
        const auto fwd = transform_feature(x, beta, cfg);
        const auto mir = transform_feature(neg, -beta, cfg);
        CHECK(mir.winsorised_count == fwd.winsorised_count);
        CHECK(std::abs(mir.ad_stat - fwd.ad_stat) <= 1e-10);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(mir.transformed[i] == -fwd.transformed[i]);
        }
    }
}

TEST_CASE("pipeline is continuous across beta = 0") {
    TransformConfig cfg;
    const auto x = testsupport::gaussian(1000, 99);
    const auto center = transform_feature(x, 0.0, cfg).transformed;
    for (double beta : {-0.01, 0.01}) {
        const auto nearby = transform_feature(x, beta, cfg).transformed;
        double worst = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max(worst, std::abs(nearby[i] - center[i]));
        }
        CHECK(worst <= 0.05);
    }
}

TEST_CASE("winsorisation bound holds before re-standardization") {
    TransformConfig cfg;
    const auto x = testsupport::lognormal(1000, 13);
    for (double beta : {0.0, 1.0, 16.0}) {
        const auto shifted = beta == 0.0 ? x : shifted_log_transform(x, beta);
        const auto standardized = standardize_median_mad(shifted);
        const double limit = gumbel_threshold(x.size(), cfg.gumbel_percentile);
        const auto clipped = winsorise(standardized, limit);
        for (double v : clipped.values) CHECK(std::abs(v) <= limit);
    }
}

TEST_CASE("skewness shrinks under the matching-sign transform") {
    const auto x = testsupport::lognormal(1000, 21);
    const double before = std::abs(stats::sample_skewness(x));
    for (double beta : {1.0, 2.0, 4.0}) {
        const double after = std::abs(stats::sample_skewness(shifted_log_transform(x, beta)));
        CHECK(after < before);
    }
}

TEST_CASE("pipeline output is invariant to positive affine input maps") {
    TransformConfig cfg;
    const auto x = testsupport::lognormal(600, 37);
    std::vector<double> moved = x;
    for (double& v : moved) v = 3.75 * v - 11.0;
    for (double beta : {0.0, -2.0, 8.0}) {
        const auto a = transform_feature(x, beta, cfg).transformed;
        const auto b = transform_feature(moved, beta, cfg).transformed;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("config validation") {
    TransformConfig cfg;
    cfg.gumbel_percentile = 1.0;
    CHECK_THROWS_AS(validate_config(cfg), DomainError);

    cfg.gumbel_percentile = 0.95;
    cfg.beta_grid = {1.0, 2.0};
    CHECK_THROWS_AS(validate_config(cfg), InvalidArgument);  // missing 0

    cfg.beta_grid = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(validate_config(cfg), InvalidArgument);  // duplicate

    cfg.beta_grid = {0.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(validate_config(cfg), InvalidArgument);  // non-finite

    cfg.beta_grid = {0.0, -1.0, 1.0};
    CHECK_NOTHROW(validate_config(cfg));
}
