#include "matrix_io.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace autonorm {

namespace {

char delimiter_for(const std::string& path, char requested) {
    if (requested != 0) return requested;
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0) return '\t';
    return ',';
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, delim)) cells.push_back(cell);
    if (!line.empty() && line.back() == delim) cells.emplace_back();
    return cells;
}

// Full-cell strict numeric parse; locale-free.
bool parse_cell(const std::string& raw, double& out) {
    const std::string s = trimmed(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::vector<std::string>> read_table(const std::string& path, char delim) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_line(line, delim));
    }
    if (rows.empty()) {
        throw ParseError("'" + path + "': no data rows");
    }
    const std::size_t width = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw ParseError("'" + path + "': row " + std::to_string(r + 1) + " has " +
                             std::to_string(rows[r].size()) + " cells, expected " +
                             std::to_string(width));
        }
    }
    return rows;
}

void make_names_unique(std::vector<std::string>& names) {
    std::unordered_map<std::string, int> counts;
    std::unordered_set<std::string> taken(names.begin(), names.end());
    for (std::string& name : names) {
        int& seen = counts[name];
        ++seen;
        if (seen == 1) continue;
        int suffix = seen;
        std::string candidate;
        do {
            candidate = name + "_" + std::to_string(suffix++);
        } while (!taken.insert(candidate).second);
        name = candidate;
    }
}

double cell_value(const std::string& raw, NaPolicy policy, const std::string& path,
                  std::size_t row, std::size_t col) {
    double value = 0.0;
    if (parse_cell(raw, value) && std::isfinite(value)) {
        return value;
    }
    if (policy == NaPolicy::Drop) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError("'" + path + "': cell at row " + std::to_string(row + 1) + ", column " +
                     std::to_string(col + 1) + " is not a finite number: '" + trimmed(raw) +
                     "'");
}

std::string format_value(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

FeatureMatrix read_matrix(const std::string& path, const ReadOptions& opts) {
    const char delim = delimiter_for(path, opts.delimiter);
    auto rows = read_table(path, delim);

    FeatureMatrix m;
    m.orientation = opts.orientation;
    std::vector<std::string> names;

    if (opts.orientation == Orientation::FeaturesAsColumns) {
        std::size_t first_data_row = 0;
        if (opts.header) {
            for (const auto& cell : rows.front()) names.push_back(trimmed(cell));
            first_data_row = 1;
        }
        if (rows.size() <= first_data_row) {
            throw ParseError("'" + path + "': header but no data rows");
        }
        const std::size_t n_features = rows.front().size();
        const std::size_t n_objects = rows.size() - first_data_row;
        if (names.empty()) {
            for (std::size_t c = 0; c < n_features; ++c) names.push_back("f" + std::to_string(c));
        }
        make_names_unique(names);
        m.n_objects = n_objects;
        m.features.resize(n_features);
        for (std::size_t c = 0; c < n_features; ++c) {
            m.features[c].name = names[c];
            m.features[c].values.reserve(n_objects);
        }
        for (std::size_t r = first_data_row; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < n_features; ++c) {
                m.features[c].values.push_back(cell_value(rows[r][c], opts.na_policy, path, r, c));
            }
        }
    } else {
        const std::size_t first_data_col = opts.header ? 1 : 0;
        const std::size_t width = rows.front().size();
        if (width <= first_data_col) {
            throw ParseError("'" + path + "': rows have no data cells");
        }
        const std::size_t n_objects = width - first_data_col;
        m.n_objects = n_objects;
        m.features.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            names.push_back(opts.header ? trimmed(rows[r][0]) : "f" + std::to_string(r));
        }
        make_names_unique(names);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            m.features[r].name = names[r];
            m.features[r].values.reserve(n_objects);
            for (std::size_t c = first_data_col; c < width; ++c) {
                m.features[r].values.push_back(cell_value(rows[r][c], opts.na_policy, path, r, c));
            }
        }
    }

    validate_matrix(m);
    return m;
}

void write_matrix(const FeatureMatrix& m, const std::string& path, const WriteOptions& opts) {
    validate_matrix(m);
    const char delim = delimiter_for(path, opts.delimiter);
    const Orientation layout = opts.orientation.value_or(m.orientation);

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }

    if (layout == Orientation::FeaturesAsColumns) {
        if (opts.header) {
            for (std::size_t c = 0; c < m.features.size(); ++c) {
                if (c != 0) out << delim;
                out << m.features[c].name;
            }
            out << '\n';
        }
        for (std::size_t r = 0; r < m.n_objects; ++r) {
            for (std::size_t c = 0; c < m.features.size(); ++c) {
                if (c != 0) out << delim;
                out << format_value(m.features[c].values[r]);
            }
            out << '\n';
        }
    } else {
        for (const Feature& f : m.features) {
            if (opts.header) out << f.name << delim;
            for (std::size_t i = 0; i < f.values.size(); ++i) {
                if (i != 0) out << delim;
                out << format_value(f.values[i]);
            }
            out << '\n';
        }
    }

    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

void write_report(const std::vector<FeatureReport>& reports, const TransformConfig& cfg,
                  const std::string& path) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json config;
    config["beta_grid"] = cfg.beta_grid.empty() ? default_beta_grid() : cfg.beta_grid;
    config["winsorise"] = cfg.winsorise;
    config["gumbel_percentile"] = cfg.gumbel_percentile;
    config["restrict_by_skewness"] = cfg.restrict_by_skewness;
    config["std_divisor"] = "n-1";
    config["min_search_length"] = kMinSearchLength;
    doc["config"] = std::move(config);

    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (const FeatureReport& r : reports) {
        nlohmann::ordered_json rec;
        rec["feature_name"] = r.feature_name;
        rec["chosen_beta"] = r.chosen_beta;
        rec["ad_before"] = r.ad_before;
        rec["ad_after"] = r.ad_after;
        rec["skewness_before"] = r.skewness_before;
        rec["skewness_after"] = r.skewness_after;
        rec["winsorised_count"] = r.winsorised_count;
        rec["threshold_L"] = r.threshold;
        rec["degenerate"] = r.degenerate;
        rec["short_input"] = r.short_input;
        rec["n"] = r.n_used;
        features.push_back(std::move(rec));
    }
    doc["features"] = std::move(features);

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace autonorm
