#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace autonorm {

// On-disk layout of a matrix. In memory a FeatureMatrix is always one
// feature per entry of `features`; the orientation only records how the
// data was (and should be) laid out in delimited text.
enum class Orientation {
    FeaturesAsRows,
    FeaturesAsColumns,
};

struct Feature {
    std::string name;
    std::vector<double> values;  // length n_objects; non-finite = missing
};

struct FeatureMatrix {
    std::vector<Feature> features;
    std::size_t n_objects = 0;
    Orientation orientation = Orientation::FeaturesAsColumns;
};

/// Throws InvalidArgument unless the matrix is non-empty with uniformly
/// sized features of length >= 1.
void validate_matrix(const FeatureMatrix& m);

}  // namespace autonorm
