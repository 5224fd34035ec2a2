#pragma once

#include <utility>

#include "observer.hpp"

namespace truncobs {

struct estimation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How performance integrals are evaluated. Quadrature is exact up to grid
// resolution but restricted to M == 1; Monte Carlo works for any M.
struct Method {
    enum class Kind { Quadrature, MonteCarlo };

    Kind kind = Kind::MonteCarlo;
    long long n = 1'000'000;  // samples per class
    std::uint64_t seed = 0;
    int n_threads = 0;  // 0: resolve from TRUNCOBS_THREADS / hardware

    static Method quadrature() { return {Kind::Quadrature, 0, 0, 0}; }
    static Method monte_carlo(long long n, std::uint64_t seed, int threads = 0) {
        return {Kind::MonteCarlo, n, seed, threads};
    }
};

// Total ROC area split into analysis (rated vs rated), gist (rated positive
// vs unrated negative) and guessing (both unrated) contributions, together
// with the full-rejection probabilities that produced them.
struct AucDecomposition {
    double az = 0.0;
    double az1 = 0.0;
    double az2 = 0.0;
    double az3 = 0.0;
    double rej0 = 0.0;
    double rej1 = 0.0;
    double az1_se = 0.0;
};

struct RocPoint {
    enum class Tag { Rated, Endpoint, GistExtension, GuessSegment };

    double fpf = 0.0;
    double tpf = 0.0;
    Tag tag = Tag::Rated;
};

// Rated-only parametric curve plus, when completed, the straight guessing
// segment to (1,1). The horizontal gist extension is carried separately as a
// plot annotation; the guessing segment is the curve completion and the
// trapezoidal area of `points` reproduces the total area.
struct RocCurve {
    std::vector<RocPoint> points;
    std::pair<double, double> endpoint{1.0, 1.0};  // (FPF, TPF) of the rated curve
    bool completed = true;
    std::vector<RocPoint> gist_extension;  // empty when nothing is unrated
    std::vector<RocPoint> guess_segment;

    double trapezoid_area() const;
};

// Gist area: [1 - rej1] * rej0.
double gist_component(const FeatureModel& model, const TruncationVector& taus);

// Guessing area: rej1 * rej0 / 2.
double guess_component(const FeatureModel& model, const TruncationVector& taus);

// Analysis area and its standard error: probability that a rated positive
// outranks a rated negative, weighted by the joint rated probabilities.
std::pair<double, double> analysis_component(const FeatureModel& model,
                                             const TruncationVector& taus,
                                             const Method& method);

AucDecomposition total_auc(const FeatureModel& model, const TruncationVector& taus,
                           const Method& method);

// High-internal-noise limit: [1 + rej0 - rej1] / 2.
double asymptotic_auc(const FeatureModel& model, const TruncationVector& taus);

RocCurve roc_curve(const FeatureModel& model, const TruncationVector& taus,
                   const Method& method, int n_thresholds, bool complete = true);

// Closed-form untruncated noiseless oracle, Phi((mu1-mu0)/sqrt(v0+v1)).
double binormal_auc(double mu0, double var0, double mu1, double var1);

// Mann-Whitney probability of superiority with ties counted 1/2, plus a
// Hanley-McNeil standard error. Exposed for reuse by tests.
std::pair<double, double> mann_whitney_auc(std::vector<double> positives,
                                           std::vector<double> negatives);

int resolve_threads(int requested);

}  // namespace truncobs
