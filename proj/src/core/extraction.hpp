#pragma once

#include <cstdint>
#include <span>

#include "gauss.hpp"

namespace truncobs {

// 2^M enumeration guard; the studied models use M in {1,2}.
inline constexpr int kMaxFeatures = 20;

// Per-feature lefthand truncation thresholds; -inf disables truncation.
struct TruncationVector {
    std::vector<double> taus;

    int dim() const { return static_cast<int>(taus.size()); }
    void validate() const;
};

// Indicator of which features survived truncation, stored as a bitmask.
// The all-zeros pattern marks an unrated image.
struct ExtractionPattern {
    std::uint32_t bits = 0;
    int dim = 0;

    int count() const { return __builtin_popcount(bits); }
    bool extracted(int i) const { return (bits >> i) & 1u; }
    bool unrated() const { return bits == 0; }

    static ExtractionPattern none(int m) { return {0u, m}; }
    static ExtractionPattern all(int m) { return {(1u << m) - 1u, m}; }
};

// Indicator that feature vector f lies in the region selected by alpha:
// extracted coordinates at or above their threshold, rejected ones below.
int composite_step(std::span<const double> f, const TruncationVector& taus,
                   const ExtractionPattern& alpha);

// The unique pattern with composite_step == 1; f_i == tau_i counts as extracted.
ExtractionPattern pattern_from_features(std::span<const double> f,
                                        const TruncationVector& taus);

// Probability of extracting exactly the subset alpha under class params
// (independent features: product of acceptance and rejection probabilities).
double extraction_prob(const ExtractionPattern& alpha, const ClassParams& params,
                       const TruncationVector& taus);

// Probability that every feature is rejected and the image goes unrated.
double full_rejection_prob(const ClassParams& params, const TruncationVector& taus);

}  // namespace truncobs
