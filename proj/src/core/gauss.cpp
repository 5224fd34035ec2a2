#include "gauss.hpp"

#include <cmath>
#include <string>

namespace truncobs {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kLogAcceptanceFloor = -690.7755278982137;  // log(1e-300)

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

}  // namespace

void ClassParams::validate() const {
    if (means.empty() || means.size() != stddevs.size()) {
        throw std::invalid_argument("class params need matching nonempty means/stddevs");
    }
    if (label != 0 && label != 1) {
        throw std::invalid_argument("class label must be 0 or 1");
    }
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (!std::isfinite(means[i])) {
            throw std::invalid_argument("class mean must be finite");
        }
        if (!std::isfinite(stddevs[i]) || stddevs[i] <= 0.0) {
            throw std::invalid_argument("class stddev must be positive and finite");
        }
    }
}

void InternalNoise::validate() const {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw std::invalid_argument("internal noise sigma must be nonnegative and finite");
    }
}

double normal_pdf(double x, double mu, double var) {
    require_finite(x, "x");
    require_finite(mu, "mu");
    if (!std::isfinite(var) || var <= 0.0) {
        throw std::domain_error("variance must be positive and finite");
    }
    const double z = x - mu;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
}

double log_normal_pdf(double x, double mu, double var) {
    if (!std::isfinite(var) || var <= 0.0) {
        throw std::domain_error("variance must be positive and finite");
    }
    const double z = x - mu;
    return -0.5 * (kLog2Pi + std::log(var)) - 0.5 * z * z / var;
}

double normal_cdf(double x) {
    require_finite(x, "x");
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double log_normal_cdf(double x) {
    require_finite(x, "x");
    if (x >= -37.0) {
        // erfc keeps full relative accuracy down to where it underflows.
        return std::log(0.5 * std::erfc(-x * kInvSqrt2));
    }
    // Lower-tail asymptotic expansion: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + ...).
    const double z2 = x * x;
    double series = 1.0 - 1.0 / z2 * (1.0 - 3.0 / z2 * (1.0 - 5.0 / z2 * (1.0 - 7.0 / z2)));
    return -0.5 * (kLog2Pi + z2) - std::log(-x) + std::log(series);
}

double acceptance_prob(const ClassParams& params, int i, double tau_i) {
    if (i < 0 || i >= params.dim()) {
        throw std::invalid_argument("feature index out of range");
    }
    if (tau_i == kNoTruncation) {
        return 1.0;
    }
    require_finite(tau_i, "tau");
    return normal_cdf((params.means[i] - tau_i) / params.stddevs[i]);
}

double log_acceptance_prob(const ClassParams& params, int i, double tau_i) {
    if (i < 0 || i >= params.dim()) {
        throw std::invalid_argument("feature index out of range");
    }
    if (tau_i == kNoTruncation) {
        return 0.0;
    }
    require_finite(tau_i, "tau");
    return log_normal_cdf((params.means[i] - tau_i) / params.stddevs[i]);
}

void require_acceptance_mass(const ClassParams& params, double tau_i, int i) {
    if (log_acceptance_prob(params, i, tau_i) < kLogAcceptanceFloor) {
        throw degenerate_truncation_error("acceptance probability underflow at tau=" +
                                          std::to_string(tau_i));
    }
}

double truncated_noised_logpdf(double e_i, const ClassParams& params, int i,
                               double tau_i, const InternalNoise& noise) {
    const double mu = params.means[i];
    const double sc = params.stddevs[i];
    const double sigma = noise.sigma;
    const double total_var = sc * sc + sigma * sigma;

    if (tau_i == kNoTruncation) {
        return log_normal_pdf(e_i, mu, total_var);
    }

    const double log_accept = log_acceptance_prob(params, i, tau_i);
    if (log_accept < kLogAcceptanceFloor) {
        throw degenerate_truncation_error("acceptance probability underflow at tau=" +
                                          std::to_string(tau_i));
    }

    if (sigma == 0.0) {
        // Truncated normal: renormalized on [tau, inf), zero below.
        if (e_i < tau_i) {
            return -std::numeric_limits<double>::infinity();
        }
        return log_normal_pdf(e_i, mu, sc * sc) - log_accept;
    }

    const double a = (tau_i * total_var - sigma * sigma * mu) / (sc * sc);
    const double b = sigma / sc * std::sqrt(total_var);
    return log_normal_pdf(e_i, mu, total_var) + log_normal_cdf((e_i - a) / b) - log_accept;
}

}  // namespace truncobs
