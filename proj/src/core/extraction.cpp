#include "extraction.hpp"

#include <cmath>

namespace truncobs {

void TruncationVector::validate() const {
    if (taus.empty()) {
        throw std::invalid_argument("truncation vector must be nonempty");
    }
    if (dim() > kMaxFeatures) {
        throw std::invalid_argument("feature count exceeds enumeration cap");
    }
    for (double t : taus) {
        if (std::isnan(t) || t == std::numeric_limits<double>::infinity()) {
            throw std::invalid_argument("threshold must be finite or -inf");
        }
    }
}

int composite_step(std::span<const double> f, const TruncationVector& taus,
                   const ExtractionPattern& alpha) {
    const int m = taus.dim();
    if (static_cast<int>(f.size()) != m || alpha.dim != m) {
        throw std::invalid_argument("dimension mismatch in composite step");
    }
    for (int i = 0; i < m; ++i) {
        const bool above = f[i] >= taus.taus[i];
        if (above != alpha.extracted(i)) {
            return 0;
        }
    }
    return 1;
}

ExtractionPattern pattern_from_features(std::span<const double> f,
                                        const TruncationVector& taus) {
    const int m = taus.dim();
    if (static_cast<int>(f.size()) != m) {
        throw std::invalid_argument("dimension mismatch in pattern extraction");
    }
    std::uint32_t bits = 0;
    for (int i = 0; i < m; ++i) {
        if (f[i] >= taus.taus[i]) {
            bits |= 1u << i;
        }
    }
    return {bits, m};
}

double extraction_prob(const ExtractionPattern& alpha, const ClassParams& params,
                       const TruncationVector& taus) {
    const int m = taus.dim();
    if (alpha.dim != m || params.dim() != m) {
        throw std::invalid_argument("dimension mismatch in extraction probability");
    }
    double prob = 1.0;
    for (int i = 0; i < m; ++i) {
        const double accept = acceptance_prob(params, i, taus.taus[i]);
        prob *= alpha.extracted(i) ? accept : 1.0 - accept;
    }
    return prob;
}

double full_rejection_prob(const ClassParams& params, const TruncationVector& taus) {
    return extraction_prob(ExtractionPattern::none(taus.dim()), params, taus);
}

}  // namespace truncobs
