#include "autonorm.h"

#include "anderson_darling.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "matrix_io.hpp"
#include "search.hpp"
#include "stats.hpp"
#include "transform.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <span>
#include <string>
#include <vector>

using namespace autonorm;

struct an_config {
    TransformConfig transform;
    unsigned threads = 0;
};

struct an_matrix {
    FeatureMatrix data;
};

struct an_result {
    an_matrix matrix;
    std::vector<FeatureReport> reports;
    TransformConfig config;  // echoed into the report for reproducibility
};

namespace {

thread_local std::string g_last_error;

an_status fail(an_status code, const char* message) {
    g_last_error = message;
    return code;
}

// Translate the library error hierarchy into status codes.
an_status handle_exception() {
    try {
        throw;
    } catch (const DegenerateInput& e) {
        return fail(AN_ERROR_DOMAIN, e.what());
    } catch (const DomainError& e) {
        return fail(AN_ERROR_DOMAIN, e.what());
    } catch (const ParseError& e) {
        return fail(AN_ERROR_PARSE, e.what());
    } catch (const IoError& e) {
        return fail(AN_ERROR_IO, e.what());
    } catch (const InvalidArgument& e) {
        return fail(AN_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(AN_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(AN_ERROR_INTERNAL, "unknown error");
    }
}

an_status require(bool condition, const char* message) {
    return condition ? AN_OK : fail(AN_ERROR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* an_version(void) { return "0.1.0"; }

const char* an_last_error(void) { return g_last_error.c_str(); }

/* ---- configuration ---------------------------------------------------- */

an_status an_config_create(an_config** out_cfg) {
    if (an_status s = require(out_cfg != nullptr, "an_config_create: null output"); s != AN_OK)
        return s;
    try {
        auto* cfg = new an_config;
        cfg->transform.beta_grid = default_beta_grid();
        *out_cfg = cfg;
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

void an_config_destroy(an_config* cfg) { delete cfg; }

an_status an_config_set_grid(an_config* cfg, const double* betas, size_t count) {
    if (an_status s = require(cfg != nullptr, "an_config_set_grid: null config"); s != AN_OK)
        return s;
    if (an_status s = require(betas != nullptr || count == 0, "an_config_set_grid: null grid");
        s != AN_OK)
        return s;
    try {
        TransformConfig candidate = cfg->transform;
        if (count == 0) {
            candidate.beta_grid = default_beta_grid();
        } else {
            candidate.beta_grid.assign(betas, betas + count);
        }
        validate_config(candidate);
        cfg->transform = std::move(candidate);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_config_set_winsorise(an_config* cfg, int enabled) {
    if (an_status s = require(cfg != nullptr, "an_config_set_winsorise: null config"); s != AN_OK)
        return s;
    cfg->transform.winsorise = enabled != 0;
    return AN_OK;
}

an_status an_config_set_gumbel_percentile(an_config* cfg, double p) {
    if (an_status s = require(cfg != nullptr, "an_config_set_gumbel_percentile: null config");
        s != AN_OK)
        return s;
    if (!(p > 0.0 && p < 1.0)) {
        return fail(AN_ERROR_DOMAIN, "gumbel percentile must lie in (0, 1)");
    }
    cfg->transform.gumbel_percentile = p;
    return AN_OK;
}

an_status an_config_set_restrict_by_skewness(an_config* cfg, int enabled) {
    if (an_status s = require(cfg != nullptr, "an_config_set_restrict_by_skewness: null config");
        s != AN_OK)
        return s;
    cfg->transform.restrict_by_skewness = enabled != 0;
    return AN_OK;
}

an_status an_config_set_threads(an_config* cfg, int threads) {
    if (an_status s = require(cfg != nullptr, "an_config_set_threads: null config"); s != AN_OK)
        return s;
    if (threads < 0) {
        return fail(AN_ERROR_INVALID_ARGUMENT, "thread count must be >= 0");
    }
    cfg->threads = static_cast<unsigned>(threads);
    return AN_OK;
}

/* ---- matrices ---------------------------------------------------------- */

an_status an_matrix_create(size_t n_features, size_t n_objects, const char* const* names,
                           const double* values, an_matrix** out_matrix) {
    if (an_status s = require(out_matrix != nullptr, "an_matrix_create: null output"); s != AN_OK)
        return s;
    if (an_status s = require(values != nullptr, "an_matrix_create: null values"); s != AN_OK)
        return s;
    try {
        auto m = std::make_unique<an_matrix>();
        m->data.n_objects = n_objects;
        m->data.orientation = Orientation::FeaturesAsColumns;
        m->data.features.reserve(n_features);
        for (size_t f = 0; f < n_features; ++f) {
            Feature feature;
            feature.name = (names != nullptr && names[f] != nullptr)
                               ? std::string(names[f])
                               : "f" + std::to_string(f);
            feature.values.assign(values + f * n_objects, values + (f + 1) * n_objects);
            m->data.features.push_back(std::move(feature));
        }
        validate_matrix(m->data);
        *out_matrix = m.release();
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

void an_matrix_destroy(an_matrix* m) { delete m; }

void an_read_options_init(an_read_options* opts) {
    if (opts == nullptr) return;
    opts->delimiter = 0;
    opts->orientation = AN_FEATURES_AS_COLUMNS;
    opts->has_header = 1;
    opts->na_policy = AN_NA_ERROR;
}

an_status an_matrix_read(const char* path, const an_read_options* opts, an_matrix** out_matrix) {
    if (an_status s = require(path != nullptr, "an_matrix_read: null path"); s != AN_OK) return s;
    if (an_status s = require(out_matrix != nullptr, "an_matrix_read: null output"); s != AN_OK)
        return s;
    try {
        ReadOptions options;
        if (opts != nullptr) {
            options.delimiter = opts->delimiter;
            options.orientation = opts->orientation == AN_FEATURES_AS_ROWS
                                      ? Orientation::FeaturesAsRows
                                      : Orientation::FeaturesAsColumns;
            options.header = opts->has_header != 0;
            options.na_policy = opts->na_policy == AN_NA_DROP ? NaPolicy::Drop : NaPolicy::Error;
        }
        auto m = std::make_unique<an_matrix>();
        m->data = read_matrix(path, options);
        *out_matrix = m.release();
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_matrix_write(const an_matrix* m, const char* path, char delimiter, int orientation) {
    if (an_status s = require(m != nullptr, "an_matrix_write: null matrix"); s != AN_OK) return s;
    if (an_status s = require(path != nullptr, "an_matrix_write: null path"); s != AN_OK) return s;
    try {
        WriteOptions options;
        options.delimiter = delimiter;
        if (orientation == AN_FEATURES_AS_ROWS) {
            options.orientation = Orientation::FeaturesAsRows;
        } else if (orientation == AN_FEATURES_AS_COLUMNS) {
            options.orientation = Orientation::FeaturesAsColumns;
        }
        write_matrix(m->data, path, options);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

size_t an_matrix_feature_count(const an_matrix* m) {
    return m == nullptr ? 0 : m->data.features.size();
}

size_t an_matrix_object_count(const an_matrix* m) {
    return m == nullptr ? 0 : m->data.n_objects;
}

const char* an_matrix_feature_name(const an_matrix* m, size_t feature) {
    if (m == nullptr || feature >= m->data.features.size()) return nullptr;
    return m->data.features[feature].name.c_str();
}

an_status an_matrix_feature_values(const an_matrix* m, size_t feature, const double** out_values,
                                   size_t* out_count) {
    if (an_status s = require(m != nullptr, "an_matrix_feature_values: null matrix"); s != AN_OK)
        return s;
    if (an_status s = require(out_values != nullptr && out_count != nullptr,
                              "an_matrix_feature_values: null output");
        s != AN_OK)
        return s;
    if (feature >= m->data.features.size()) {
        return fail(AN_ERROR_INVALID_ARGUMENT, "an_matrix_feature_values: feature index out of range");
    }
    *out_values = m->data.features[feature].values.data();
    *out_count = m->data.features[feature].values.size();
    return AN_OK;
}

/* ---- transformation ----------------------------------------------------- */

an_status an_transform(const an_matrix* in, const an_config* cfg, an_result** out_result) {
    if (an_status s = require(in != nullptr, "an_transform: null matrix"); s != AN_OK) return s;
    if (an_status s = require(out_result != nullptr, "an_transform: null output"); s != AN_OK)
        return s;
    try {
        const TransformConfig transform_cfg = cfg != nullptr ? cfg->transform : TransformConfig{};
        const unsigned threads = cfg != nullptr ? cfg->threads : 0;
        MatrixTransformResult run = transform_matrix(in->data, transform_cfg, threads);
        auto result = std::make_unique<an_result>();
        result->matrix.data = std::move(run.matrix);
        result->reports = std::move(run.reports);
        result->config = transform_cfg;
        if (result->config.beta_grid.empty()) {
            result->config.beta_grid = default_beta_grid();
        }
        *out_result = result.release();
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

void an_result_destroy(an_result* r) { delete r; }

const an_matrix* an_result_matrix(const an_result* r) {
    return r == nullptr ? nullptr : &r->matrix;
}

size_t an_result_feature_count(const an_result* r) {
    return r == nullptr ? 0 : r->reports.size();
}

an_status an_result_report(const an_result* r, size_t feature, an_feature_report* out_report) {
    if (an_status s = require(r != nullptr, "an_result_report: null result"); s != AN_OK) return s;
    if (an_status s = require(out_report != nullptr, "an_result_report: null output"); s != AN_OK)
        return s;
    if (feature >= r->reports.size()) {
        return fail(AN_ERROR_INVALID_ARGUMENT, "an_result_report: feature index out of range");
    }
    const FeatureReport& rep = r->reports[feature];
    out_report->name = rep.feature_name.c_str();
    out_report->chosen_beta = rep.chosen_beta;
    out_report->ad_before = rep.ad_before;
    out_report->ad_after = rep.ad_after;
    out_report->skewness_before = rep.skewness_before;
    out_report->skewness_after = rep.skewness_after;
    out_report->threshold = rep.threshold;
    out_report->winsorised_count = static_cast<long long>(rep.winsorised_count);
    out_report->n = static_cast<long long>(rep.n_used);
    out_report->degenerate = rep.degenerate ? 1 : 0;
    out_report->short_input = rep.short_input ? 1 : 0;
    return AN_OK;
}

an_status an_result_write_report(const an_result* r, const char* path) {
    if (an_status s = require(r != nullptr, "an_result_write_report: null result"); s != AN_OK)
        return s;
    if (an_status s = require(path != nullptr, "an_result_write_report: null path"); s != AN_OK)
        return s;
    try {
        write_report(r->reports, r->config, path);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

/* ---- diagnostics -------------------------------------------------------- */

void an_diag_options_init(an_diag_options* opts) {
    if (opts == nullptr) return;
    opts->directory = "diagnostics";
    opts->scatter_a = nullptr;
    opts->scatter_b = nullptr;
    opts->seed = 1;
    opts->qq_max_points = 0;
    opts->kde_grid_points = 0;
}

an_status an_diagnose(const an_matrix* input, const an_result* r, const an_diag_options* opts) {
    if (an_status s = require(input != nullptr, "an_diagnose: null input matrix"); s != AN_OK)
        return s;
    if (an_status s = require(r != nullptr, "an_diagnose: null result"); s != AN_OK) return s;
    try {
        DiagnosticsOptions options;
        if (opts != nullptr) {
            if (opts->directory != nullptr) options.directory = opts->directory;
            if (opts->scatter_a != nullptr) options.scatter_a = opts->scatter_a;
            if (opts->scatter_b != nullptr) options.scatter_b = opts->scatter_b;
            options.seed = opts->seed;
            if (opts->qq_max_points > 0) {
                options.qq_max_points = static_cast<std::size_t>(opts->qq_max_points);
            }
            if (opts->kde_grid_points > 1) {
                options.kde_points = static_cast<std::size_t>(opts->kde_grid_points);
            }
        }
        write_diagnostics(input->data, r->matrix.data, r->config, options);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

/* ---- scalar helpers ------------------------------------------------------ */

an_status an_anderson_darling(const double* values, size_t count, double* out) {
    if (an_status s = require(values != nullptr && out != nullptr && count > 0,
                              "an_anderson_darling: null argument or empty input");
        s != AN_OK)
        return s;
    try {
        *out = anderson_darling(std::span<const double>(values, count));
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_sample_skewness(const double* values, size_t count, double* out) {
    if (an_status s = require(values != nullptr && out != nullptr,
                              "an_sample_skewness: null argument");
        s != AN_OK)
        return s;
    try {
        *out = stats::sample_skewness(std::span<const double>(values, count));
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_gumbel_threshold(size_t n, double percentile, double* out) {
    if (an_status s = require(out != nullptr, "an_gumbel_threshold: null output"); s != AN_OK)
        return s;
    try {
        *out = gumbel_threshold(n, percentile);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_gumbel_quantile(double p, double* out) {
    if (an_status s = require(out != nullptr, "an_gumbel_quantile: null output"); s != AN_OK)
        return s;
    try {
        *out = stats::gumbel_quantile(p);
        return AN_OK;
    } catch (...) {
        return handle_exception();
    }
}

an_status an_std_normal_log_cdf(double z, double* out) {
    if (an_status s = require(out != nullptr, "an_std_normal_log_cdf: null output"); s != AN_OK)
        return s;
    *out = stats::std_normal_log_cdf(z);
    return AN_OK;
}

}  // extern "C"
