#include "observer.hpp"

namespace truncobs {

void FeatureModel::validate() const {
    class0.validate();
    class1.validate();
    noise.validate();
    if (class0.dim() != class1.dim()) {
        throw std::invalid_argument("class dimensions must match");
    }
    if (dim() > kMaxFeatures) {
        throw std::invalid_argument("feature count exceeds enumeration cap");
    }
}

double llr(std::span<const double> e, const ExtractionPattern& alpha,
           const FeatureModel& model, const TruncationVector& taus) {
    if (alpha.unrated()) {
        throw std::invalid_argument("cannot rate the empty extraction pattern");
    }
    if (static_cast<int>(e.size()) != alpha.count() || alpha.dim != taus.dim()) {
        throw std::invalid_argument("dimension mismatch in llr");
    }
    double sum = 0.0;
    int k = 0;
    for (int i = 0; i < alpha.dim; ++i) {
        if (!alpha.extracted(i)) {
            continue;
        }
        const double tau_i = taus.taus[i];
        sum += truncated_noised_logpdf(e[k], model.class1, i, tau_i, model.noise) -
               truncated_noised_logpdf(e[k], model.class0, i, tau_i, model.noise);
        ++k;
    }
    return sum;
}

RatingOutcome rate_image(std::span<const double> f, const FeatureModel& model,
                         const TruncationVector& taus, Rng& rng) {
    const int m = taus.dim();
    const ExtractionPattern alpha = pattern_from_features(f, taus);
    const double sigma = model.noise.sigma;

    double noisy[kMaxFeatures];
    if (sigma > 0.0) {
        for (int i = 0; i < m; ++i) {
            noisy[i] = f[i] + sigma * rng.normal();
        }
    }
    if (alpha.unrated()) {
        return RatingOutcome::unrated(m);
    }

    double e[kMaxFeatures];
    int k = 0;
    for (int i = 0; i < m; ++i) {
        if (alpha.extracted(i)) {
            e[k++] = sigma > 0.0 ? noisy[i] : f[i];
        }
    }
    const double lambda = llr(std::span<const double>(e, static_cast<std::size_t>(k)),
                              alpha, model, taus);
    return {true, lambda, alpha};
}

std::vector<double> sample_external(int label, const FeatureModel& model,
                                    std::size_t n, Rng& rng) {
    const ClassParams& params = model.params(label);
    const int m = params.dim();
    std::vector<double> out(n * static_cast<std::size_t>(m));
    for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < m; ++i) {
            out[s * m + i] = params.means[i] + params.stddevs[i] * rng.normal();
        }
    }
    return out;
}

}  // namespace truncobs
