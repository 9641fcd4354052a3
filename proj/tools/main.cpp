// autonorm command line: transform delimited numeric matrices toward
// per-feature normality and emit diagnostics. Talks to the library purely
// through the C API in autonorm.h.

#include "autonorm.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 ok, 1 usage/config, 2 parse, 3 io, 4 domain, 5 internal.
int exit_code_for(an_status status) {
    switch (status) {
        case AN_OK: return 0;
        case AN_ERROR_INVALID_ARGUMENT: return 1;
        case AN_ERROR_PARSE: return 2;
        case AN_ERROR_IO: return 3;
        case AN_ERROR_DOMAIN: return 4;
        case AN_ERROR_INTERNAL: return 5;
    }
    return 5;
}

struct CliError {
    int code;
    std::string message;
};

void check(an_status status) {
    if (status != AN_OK) {
        throw CliError{exit_code_for(status), an_last_error()};
    }
}

struct Options {
    std::string input;
    std::string output;
    std::string report;
    std::string orient = "cols";
    std::string delimiter;
    std::string grid;
    std::string na = "error";
    std::string diagnostics_dir;
    std::string scatter;
    double percentile = 0.95;
    unsigned long long seed = 1;
    int threads = 0;
    bool no_winsorise = false;
};

void add_common_options(CLI::App* cmd, Options& opts, bool diagnose) {
    cmd->add_option("-i,--input", opts.input, "Input matrix (CSV/TSV)")->required();
    cmd->add_option("-o,--output", opts.output, "Transformed matrix output path");
    cmd->add_option("-r,--report", opts.report, "Per-feature JSON report path");
    cmd->add_option("--orient", opts.orient, "Feature layout in the file: rows|cols")
        ->check(CLI::IsMember({"rows", "cols"}))
        ->capture_default_str();
    cmd->add_option("--delimiter", opts.delimiter,
                    "Cell delimiter (single character, or 'tab'/'comma'/'space'); default by extension");
    cmd->add_option("--grid", opts.grid,
                    "Beta grid override: comma-separated values, or a file of numbers; must include 0");
    cmd->add_flag("--no-winsorise", opts.no_winsorise, "Disable winsorisation of extreme values");
    cmd->add_option("--percentile", opts.percentile,
                    "Gumbel percentile for the winsorisation threshold, in (0,1)")
        ->capture_default_str();
    cmd->add_option("--na", opts.na, "Non-numeric cells: error|drop")
        ->check(CLI::IsMember({"error", "drop"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Seed for QQ subsampling in diagnostics")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "Worker threads (default: hardware concurrency)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--diagnostics-dir", opts.diagnostics_dir,
                    diagnose ? "Diagnostics output directory (default: diagnostics)"
                             : "Also emit diagnostics into this directory");
    if (diagnose) {
        cmd->add_option("--scatter", opts.scatter,
                        "Emit a before/after scatter pair for two features: A,B");
    }
}

char resolve_delimiter(const std::string& spec) {
    if (spec.empty()) return 0;
    if (spec == "tab" || spec == "\\t") return '\t';
    if (spec == "comma") return ',';
    if (spec == "space") return ' ';
    if (spec.size() == 1) return spec[0];
    throw CliError{1, "--delimiter must be a single character or tab/comma/space"};
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::string text = spec;
    if (std::filesystem::exists(spec) && std::filesystem::is_regular_file(spec)) {
        std::ifstream in(spec);
        if (!in) throw CliError{3, "cannot open grid file '" + spec + "'"};
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    std::vector<double> grid;
    std::istringstream stream(text);
    double v = 0.0;
    while (stream >> v) grid.push_back(v);
    if (!stream.eof()) {
        throw CliError{1, "--grid: could not parse '" + spec + "' as a list of numbers"};
    }
    if (grid.empty()) {
        throw CliError{1, "--grid: empty grid"};
    }
    return grid;
}

using ConfigPtr = std::unique_ptr<an_config, decltype(&an_config_destroy)>;
using MatrixPtr = std::unique_ptr<an_matrix, decltype(&an_matrix_destroy)>;
using ResultPtr = std::unique_ptr<an_result, decltype(&an_result_destroy)>;

ConfigPtr build_config(const Options& opts) {
    an_config* raw = nullptr;
    check(an_config_create(&raw));
    ConfigPtr cfg(raw, &an_config_destroy);
    // Config problems must surface before any input is read.
    if (!opts.grid.empty()) {
        const std::vector<double> grid = parse_grid_spec(opts.grid);
        check(an_config_set_grid(cfg.get(), grid.data(), grid.size()));
    }
    check(an_config_set_winsorise(cfg.get(), opts.no_winsorise ? 0 : 1));
    check(an_config_set_gumbel_percentile(cfg.get(), opts.percentile));
    check(an_config_set_threads(cfg.get(), opts.threads));
    return cfg;
}

MatrixPtr read_input(const Options& opts) {
    an_read_options read_opts;
    an_read_options_init(&read_opts);
    read_opts.delimiter = resolve_delimiter(opts.delimiter);
    read_opts.orientation =
        opts.orient == "rows" ? AN_FEATURES_AS_ROWS : AN_FEATURES_AS_COLUMNS;
    read_opts.na_policy = opts.na == "drop" ? AN_NA_DROP : AN_NA_ERROR;
    an_matrix* raw = nullptr;
    check(an_matrix_read(opts.input.c_str(), &read_opts, &raw));
    return MatrixPtr(raw, &an_matrix_destroy);
}

void print_summary(const an_result* result) {
    const size_t count = an_result_feature_count(result);
    for (size_t i = 0; i < count; ++i) {
        an_feature_report report;
        check(an_result_report(result, i, &report));
        std::printf("%s: beta=%g AD %.6g -> %.6g", report.name, report.chosen_beta,
                    report.ad_before, report.ad_after);
        if (report.winsorised_count > 0) {
            std::printf(" (winsorised %lld)", report.winsorised_count);
        }
        if (report.degenerate) std::printf(" [degenerate]");
        if (report.short_input) std::printf(" [short input: n=%lld]", report.n);
        std::printf("\n");
    }
}

void run_diagnostics(const Options& opts, const an_matrix* input, const an_result* result,
                     const std::string& directory) {
    an_diag_options diag;
    an_diag_options_init(&diag);
    diag.directory = directory.c_str();
    diag.seed = opts.seed;
    std::string scatter_a, scatter_b;
    if (!opts.scatter.empty()) {
        const auto comma = opts.scatter.find(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 >= opts.scatter.size()) {
            throw CliError{1, "--scatter expects two feature names: A,B"};
        }
        scatter_a = opts.scatter.substr(0, comma);
        scatter_b = opts.scatter.substr(comma + 1);
        diag.scatter_a = scatter_a.c_str();
        diag.scatter_b = scatter_b.c_str();
    }
    check(an_diagnose(input, result, &diag));
}

int run(const Options& opts, bool diagnose) {
    ConfigPtr cfg = build_config(opts);
    MatrixPtr input = read_input(opts);

    an_result* raw_result = nullptr;
    check(an_transform(input.get(), cfg.get(), &raw_result));
    ResultPtr result(raw_result, &an_result_destroy);

    if (!opts.output.empty()) {
        check(an_matrix_write(an_result_matrix(result.get()), opts.output.c_str(),
                              resolve_delimiter(opts.delimiter), -1));
    }
    std::string report_path = opts.report;
    if (report_path.empty() && !opts.output.empty()) {
        report_path = opts.output + ".report.json";
    }
    if (!report_path.empty()) {
        check(an_result_write_report(result.get(), report_path.c_str()));
    }

    if (diagnose || !opts.diagnostics_dir.empty()) {
        const std::string dir =
            opts.diagnostics_dir.empty() ? std::string("diagnostics") : opts.diagnostics_dir;
        run_diagnostics(opts, input.get(), result.get(), dir);
    }

    print_summary(result.get());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"autonorm: automatic per-feature normality transformation"};
    app.set_config("--config", "", "Read options from a flat key=value file");
    app.require_subcommand(1);

    Options transform_opts;
    Options diagnose_opts;
    CLI::App* transform =
        app.add_subcommand("transform", "Transform a matrix and write it with a report");
    add_common_options(transform, transform_opts, false);
    transform->get_option("--output")->required();

    CLI::App* diagnose = app.add_subcommand(
        "diagnose", "Transform a matrix and emit before/after KDE, QQ and scatter plots");
    add_common_options(diagnose, diagnose_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // fold CLI11's usage-error codes into 1
    }

    try {
        if (transform->parsed()) return run(transform_opts, false);
        if (diagnose->parsed()) return run(diagnose_opts, true);
    } catch (const CliError& e) {
        std::fprintf(stderr, "autonorm: %s\n", e.message.c_str());
        return e.code;
    }
    return 0;
}
