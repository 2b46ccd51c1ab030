#pragma once

#include <stdexcept>
#include <string>

#include "srff/features.hpp"
#include "srff/rng.hpp"

namespace srff {

// Malformed input files (CSV cells, rule files). Mapped to exit code 2.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric CSV, comma separated, optional header row to skip. Malformed
// cells are reported with 1-based row/column indices.
Dataset load_csv(const std::string& path, bool header = false);

// Row-major CSV with 17 significant digits (value-preserving for doubles).
void save_csv(const std::string& path, const Matrix& m);

// Median pairwise distance over a seeded subsample of at most max_pairs
// pairs (all pairs when the dataset is small enough).
double median_heuristic(const Dataset& data, long max_pairs, RngSeed seed);

Dataset synth_gaussian(int n, int d, RngSeed seed);
Dataset synth_sphere(int n, int d, double radius, RngSeed seed);

// Seeded shuffle, first n rows kept.
Dataset subsample(const Dataset& data, int n, RngSeed seed);

}  // namespace srff
