#pragma once

#include "feature_matrix.hpp"
#include "search.hpp"
#include "transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace autonorm {

enum class NaPolicy {
    Error,  // any cell that does not parse to a finite number is fatal
    Drop,   // such cells become missing values, excluded from statistics
};

struct ReadOptions {
    char delimiter = 0;  // 0 = by extension: '\t' for .tsv, ',' otherwise
    Orientation orientation = Orientation::FeaturesAsColumns;
    bool header = true;  // header row (columns) or leading name cell (rows)
    NaPolicy na_policy = NaPolicy::Error;
};

struct WriteOptions {
    char delimiter = 0;  // 0 = by extension, as in ReadOptions
    // Layout to emit; unset = the matrix's own orientation metadata.
    std::optional<Orientation> orientation;
    bool header = true;
};

/// Parse a delimited text file into a feature matrix. Feature names come
/// from the header when present, otherwise "f0", "f1", ...; duplicates get
/// a numeric suffix. Throws ParseError (ragged rows, bad cells under
/// NaPolicy::Error, empty table) or IoError.
FeatureMatrix read_matrix(const std::string& path, const ReadOptions& opts = {});

/// Write the matrix as delimited text. Values use shortest round-trip
/// formatting, so read_matrix(write_matrix(m)) reproduces every value
/// exactly; missing values are written as "NA".
void write_matrix(const FeatureMatrix& m, const std::string& path,
                  const WriteOptions& opts = {});

/// Serialize per-feature reports as JSON: a config echo (grid, percentile,
/// winsorisation, divisor conventions) followed by one record per feature
/// keyed by the FeatureReport field names.
void write_report(const std::vector<FeatureReport>& reports, const TransformConfig& cfg,
                  const std::string& path);

}  // namespace autonorm
