#pragma once

#include "extraction.hpp"
#include "rng.hpp"

namespace truncobs {

// Full generative model: per-class Gaussian external sources plus the shared
// internal-noise magnitude.
struct FeatureModel {
    ClassParams class0;
    ClassParams class1;
    InternalNoise noise;

    int dim() const { return class0.dim(); }
    void validate() const;
    const ClassParams& params(int label) const { return label == 0 ? class0 : class1; }
};

// Outcome of rating one image: a log-likelihood-ratio rating with its
// extraction pattern, or unrated when every feature was rejected.
struct RatingOutcome {
    bool rated = false;
    double lambda = 0.0;
    ExtractionPattern alpha;

    static RatingOutcome unrated(int m) { return {false, 0.0, ExtractionPattern::none(m)}; }
};

// Generalized log-likelihood ratio over the extracted feature subset.
// e holds values only at the extracted indices, in increasing index order.
double llr(std::span<const double> e, const ExtractionPattern& alpha,
           const FeatureModel& model, const TruncationVector& taus);

// Applies truncation to the measured features, adds internal noise to the
// extracted entries, and rates the result. When noise.sigma > 0 the stream
// always advances by M normal draws per call so that streams stay aligned
// across differing truncation vectors (common random numbers).
RatingOutcome rate_image(std::span<const double> f, const FeatureModel& model,
                         const TruncationVector& taus, Rng& rng);

// n i.i.d. draws from the class-conditional external source, flattened
// row-major (n x M).
std::vector<double> sample_external(int label, const FeatureModel& model,
                                    std::size_t n, Rng& rng);

}  // namespace truncobs
