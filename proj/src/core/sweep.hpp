#pragma once

#include "oracle.hpp"

namespace truncobs {

struct GridAxis {
    double lo = -3.0;
    double hi = 4.0;
    int steps = 141;
};

// Threshold scan layout. With shared_threshold a single axis drives one
// common threshold across all features (identically distributed case);
// otherwise one axis per feature. include_untruncated prepends the tau=-inf
// reference point.
struct SweepGrid {
    std::vector<GridAxis> axes;
    bool shared_threshold = false;
    bool include_untruncated = true;

    void validate(int model_dim) const;
    long long size() const;  // grid points, excluding the reference point
};

struct SweepRecord {
    TruncationVector taus;
    AucDecomposition dec;
    double asymptote = 0.0;
};

struct degenerate_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluates the decomposition at every grid point. All points use the same
// base seed (common random numbers) so that Monte Carlo comparisons across
// thresholds are smooth; output order is by grid index.
std::vector<SweepRecord> sweep(const FeatureModel& model, const SweepGrid& grid,
                               const Method& method);

// Grid argmax of the total area; ties break toward lexicographically smaller
// thresholds (the -inf reference point sorts first).
SweepRecord optimize(const FeatureModel& model, const SweepGrid& grid,
                     const Method& method);

// Best truncated performance at internal noise sigma, relative to the
// untruncated noiseless observer.
double truncation_efficiency(const FeatureModel& model, const SweepGrid& grid,
                             double sigma, const Method& method);

}  // namespace truncobs
