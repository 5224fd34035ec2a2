#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace truncobs {

// Sentinel threshold meaning "feature never truncated".
inline constexpr double kNoTruncation = -std::numeric_limits<double>::infinity();

// Gaussian external-source parameters for one class: per-feature means and
// standard deviations, plus the binary class label.
struct ClassParams {
    std::vector<double> means;
    std::vector<double> stddevs;
    int label = 0;

    int dim() const { return static_cast<int>(means.size()); }
    void validate() const;
};

// Additive post-extraction processing noise, N(0, sigma^2) i.i.d. per feature.
// sigma == 0 encodes the noiseless observer.
struct InternalNoise {
    double sigma = 0.0;

    void validate() const;
};

// Raised when a truncation threshold leaves essentially no acceptance mass
// (per-feature acceptance probability below 1e-300).
struct degenerate_truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double normal_pdf(double x, double mu, double var);
double log_normal_pdf(double x, double mu, double var);

// Standard normal CDF, absolute accuracy better than 1e-12.
double normal_cdf(double x);

// log(Phi(x)), finite for arguments far into the lower tail (beyond -38).
double log_normal_cdf(double x);

// Probability that feature i exceeds tau_i under the given class,
// Phi((mu - tau) / sigma). The -inf sentinel returns exactly 1.
double acceptance_prob(const ClassParams& params, int i, double tau_i);
double log_acceptance_prob(const ClassParams& params, int i, double tau_i);

// Throws degenerate_truncation_error when any per-feature acceptance
// probability underflows (below 1e-300).
void require_acceptance_mass(const ClassParams& params, double tau_i, int i);

// Log density of a feature value after lefthand truncation at tau_i followed
// by additive internal noise. sigma == 0 takes the truncated-normal branch
// (zero density below the threshold); tau_i == -inf reduces to the plain
// Gaussian with variance sigma_c^2 + sigma^2.
double truncated_noised_logpdf(double e_i, const ClassParams& params, int i,
                               double tau_i, const InternalNoise& noise);

}  // namespace truncobs
