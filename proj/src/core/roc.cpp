#include "roc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

namespace truncobs {

namespace {

constexpr long long kChunkSize = 1 << 16;
constexpr int kQuadPoints = 32769;
constexpr double kRatedMassFloor = 1e-12;

void run_chunks(long long n_chunks, int n_threads,
                const std::function<void(long long)>& body) {
    if (n_threads <= 1 || n_chunks <= 1) {
        for (long long c = 0; c < n_chunks; ++c) {
            body(c);
        }
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long long>(n_threads, n_chunks));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (long long c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
                body(c);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

// Rated ratings for n class-c images, deterministic in (seed, label) and
// independent of thread count: every chunk owns a fixed substream.
std::vector<double> collect_rated(const FeatureModel& model, const TruncationVector& taus,
                                  int label, long long n, std::uint64_t seed,
                                  int n_threads) {
    const int m = model.dim();
    const ClassParams& params = model.params(label);
    const long long n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<std::vector<double>> per_chunk(static_cast<std::size_t>(n_chunks));

    run_chunks(n_chunks, n_threads, [&](long long c) {
        const long long begin = c * kChunkSize;
        const long long count = std::min(kChunkSize, n - begin);
        Rng rng(substream_seed(seed, (static_cast<std::uint64_t>(label) << 40) |
                                         static_cast<std::uint64_t>(c)));
        std::vector<double>& out = per_chunk[static_cast<std::size_t>(c)];
        out.reserve(static_cast<std::size_t>(count));
        double f[kMaxFeatures];
        for (long long s = 0; s < count; ++s) {
            for (int i = 0; i < m; ++i) {
                f[i] = params.means[i] + params.stddevs[i] * rng.normal();
            }
            const RatingOutcome r =
                rate_image(std::span<const double>(f, static_cast<std::size_t>(m)),
                           model, taus, rng);
            if (r.rated) {
                out.push_back(r.lambda);
            }
        }
    });

    std::vector<double> merged;
    for (const auto& chunk : per_chunk) {
        merged.insert(merged.end(), chunk.begin(), chunk.end());
    }
    return merged;
}

// 1-D grid carrying the class-conditional rated densities and the rating
// value at each node; weights are normalized to unit mass per class.
struct QuadGrid {
    std::vector<double> lambda;
    std::vector<double> w0;
    std::vector<double> w1;
};

QuadGrid build_quad_grid(const FeatureModel& model, const TruncationVector& taus) {
    if (model.dim() != 1) {
        throw std::invalid_argument("quadrature is restricted to M == 1");
    }
    const double tau = taus.taus[0];
    const double sigma = model.noise.sigma;
    const double s0 = std::hypot(model.class0.stddevs[0], sigma);
    const double s1 = std::hypot(model.class1.stddevs[0], sigma);
    const double smax = std::max(s0, s1);
    const double mu_lo = std::min(model.class0.means[0], model.class1.means[0]);
    const double mu_hi = std::max(model.class0.means[0], model.class1.means[0]);

    double lo = mu_lo - 12.0 * smax;
    double hi = mu_hi + 12.0 * smax;
    if (tau != kNoTruncation) {
        lo = std::min(lo, tau - 12.0 * smax);
        hi = std::max(hi, tau + 12.0 * smax);
        if (sigma == 0.0) {
            lo = tau;  // truncated-normal support
        }
    }

    QuadGrid grid;
    grid.lambda.resize(kQuadPoints);
    grid.w0.resize(kQuadPoints);
    grid.w1.resize(kQuadPoints);
    const double step = (hi - lo) / (kQuadPoints - 1);
    double sum0 = 0.0;
    double sum1 = 0.0;
    for (int k = 0; k < kQuadPoints; ++k) {
        const double e = lo + step * k;
        const double lp0 = truncated_noised_logpdf(e, model.class0, 0, tau, model.noise);
        const double lp1 = truncated_noised_logpdf(e, model.class1, 0, tau, model.noise);
        const double trap = (k == 0 || k == kQuadPoints - 1) ? 0.5 : 1.0;
        grid.w0[k] = std::exp(lp0) * trap * step;
        grid.w1[k] = std::exp(lp1) * trap * step;
        grid.lambda[k] = lp1 - lp0;
        sum0 += grid.w0[k];
        sum1 += grid.w1[k];
    }
    for (int k = 0; k < kQuadPoints; ++k) {
        grid.w0[k] /= sum0;
        grid.w1[k] /= sum1;
    }
    return grid;
}

// P(lambda+ > lambda-) over the grid measures, equal ratings counted 1/2.
double quad_superiority(const QuadGrid& grid) {
    std::vector<int> order(grid.lambda.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return grid.lambda[a] < grid.lambda[b]; });
    double area = 0.0;
    double cum0 = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        double g0 = 0.0;
        double g1 = 0.0;
        while (j < order.size() && grid.lambda[order[j]] == grid.lambda[order[i]]) {
            g0 += grid.w0[order[j]];
            g1 += grid.w1[order[j]];
            ++j;
        }
        area += g1 * (cum0 + 0.5 * g0);
        cum0 += g0;
        i = j;
    }
    return area;
}

struct RatedDist {
    std::vector<double> lambda;  // ascending
    std::vector<double> cumw;    // cumulative mass up to and including lambda[k]
};

RatedDist make_dist(std::vector<double> lambda, std::vector<double> weights) {
    std::vector<int> order(lambda.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lambda[a] < lambda[b]; });
    RatedDist d;
    d.lambda.reserve(lambda.size());
    d.cumw.reserve(lambda.size());
    double cum = 0.0;
    for (int idx : order) {
        cum += weights[idx];
        d.lambda.push_back(lambda[idx]);
        d.cumw.push_back(cum);
    }
    const double total = cum > 0.0 ? cum : 1.0;
    for (double& w : d.cumw) {
        w /= total;
    }
    return d;
}

// Survival P(lambda >= t) of the rated-conditional rating distribution.
double survival(const RatedDist& d, double t) {
    if (d.lambda.empty()) {
        return 0.0;
    }
    const auto it = std::lower_bound(d.lambda.begin(), d.lambda.end(), t);
    if (it == d.lambda.begin()) {
        return 1.0;
    }
    const std::size_t below = static_cast<std::size_t>(it - d.lambda.begin());
    return 1.0 - d.cumw[below - 1];
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("TRUNCOBS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double gist_component(const FeatureModel& model, const TruncationVector& taus) {
    const double rej0 = full_rejection_prob(model.class0, taus);
    const double rej1 = full_rejection_prob(model.class1, taus);
    return (1.0 - rej1) * rej0;
}

double guess_component(const FeatureModel& model, const TruncationVector& taus) {
    const double rej0 = full_rejection_prob(model.class0, taus);
    const double rej1 = full_rejection_prob(model.class1, taus);
    return 0.5 * rej1 * rej0;
}

std::pair<double, double> mann_whitney_auc(std::vector<double> positives,
                                           std::vector<double> negatives) {
    const std::size_t n1 = positives.size();
    const std::size_t n0 = negatives.size();
    if (n1 == 0 || n0 == 0) {
        throw estimation_error("no rated samples in one of the classes");
    }
    struct Entry {
        double value;
        bool positive;
    };
    std::vector<Entry> pooled;
    pooled.reserve(n1 + n0);
    for (double v : positives) {
        pooled.push_back({v, true});
    }
    for (double v : negatives) {
        pooled.push_back({v, false});
    }
    std::sort(pooled.begin(), pooled.end(),
              [](const Entry& a, const Entry& b) { return a.value < b.value; });

    // Rank sum with average ranks on ties (ties thus count 1/2).
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        std::size_t pos_in_tie = 0;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) {
            pos_in_tie += pooled[j].positive ? 1 : 0;
            ++j;
        }
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        rank_sum_pos += avg_rank * static_cast<double>(pos_in_tie);
        i = j;
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n1) * (n1 + 1.0);
    const double auc = u / (static_cast<double>(n1) * static_cast<double>(n0));

    // Hanley-McNeil standard error of the rank-statistic estimate.
    const double a = std::clamp(auc, 1e-12, 1.0 - 1e-12);
    const double q1 = a / (2.0 - a);
    const double q2 = 2.0 * a * a / (1.0 + a);
    const double var = (a * (1.0 - a) + (n1 - 1.0) * (q1 - a * a) +
                        (n0 - 1.0) * (q2 - a * a)) /
                       (static_cast<double>(n1) * static_cast<double>(n0));
    return {auc, std::sqrt(std::max(var, 0.0))};
}

std::pair<double, double> analysis_component(const FeatureModel& model,
                                             const TruncationVector& taus,
                                             const Method& method) {
    model.validate();
    taus.validate();
    for (std::size_t i = 0; i < taus.taus.size(); ++i) {
        require_acceptance_mass(model.class0, taus.taus[i], static_cast<int>(i));
        require_acceptance_mass(model.class1, taus.taus[i], static_cast<int>(i));
    }
    const double rated0 = 1.0 - full_rejection_prob(model.class0, taus);
    const double rated1 = 1.0 - full_rejection_prob(model.class1, taus);
    const double weight = rated0 * rated1;
    if (weight < kRatedMassFloor) {
        return {0.0, 0.0};
    }

    if (method.kind == Method::Kind::Quadrature) {
        const QuadGrid grid = build_quad_grid(model, taus);
        return {weight * quad_superiority(grid), 0.0};
    }

    if (method.n < 10'000) {
        throw std::invalid_argument("monte_carlo requires n >= 10000 samples per class");
    }
    const int threads = resolve_threads(method.n_threads);
    std::vector<double> lam1 = collect_rated(model, taus, 1, method.n, method.seed, threads);
    std::vector<double> lam0 = collect_rated(model, taus, 0, method.n, method.seed, threads);
    const auto [auc, se] = mann_whitney_auc(std::move(lam1), std::move(lam0));
    return {weight * auc, weight * se};
}

AucDecomposition total_auc(const FeatureModel& model, const TruncationVector& taus,
                           const Method& method) {
    AucDecomposition dec;
    dec.rej0 = full_rejection_prob(model.class0, taus);
    dec.rej1 = full_rejection_prob(model.class1, taus);
    dec.az2 = (1.0 - dec.rej1) * dec.rej0;
    dec.az3 = 0.5 * dec.rej1 * dec.rej0;
    const auto [az1, se] = analysis_component(model, taus, method);
    dec.az1 = az1;
    dec.az1_se = se;
    dec.az = dec.az1 + dec.az2 + dec.az3;
    return dec;
}

double asymptotic_auc(const FeatureModel& model, const TruncationVector& taus) {
    const double rej0 = full_rejection_prob(model.class0, taus);
    const double rej1 = full_rejection_prob(model.class1, taus);
    return 0.5 * (1.0 + rej0 - rej1);
}

double binormal_auc(double mu0, double var0, double mu1, double var1) {
    if (var0 <= 0.0 || var1 <= 0.0) {
        throw std::domain_error("variances must be positive");
    }
    return normal_cdf((mu1 - mu0) / std::sqrt(var0 + var1));
}

double RocCurve::trapezoid_area() const {
    double area = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        area += 0.5 * (points[k].tpf + points[k - 1].tpf) *
                (points[k].fpf - points[k - 1].fpf);
    }
    return area;
}

RocCurve roc_curve(const FeatureModel& model, const TruncationVector& taus,
                   const Method& method, int n_thresholds, bool complete) {
    if (n_thresholds < 2) {
        throw std::invalid_argument("need at least two thresholds");
    }
    model.validate();
    taus.validate();
    for (std::size_t i = 0; i < taus.taus.size(); ++i) {
        require_acceptance_mass(model.class0, taus.taus[i], static_cast<int>(i));
        require_acceptance_mass(model.class1, taus.taus[i], static_cast<int>(i));
    }
    const double rej0 = full_rejection_prob(model.class0, taus);
    const double rej1 = full_rejection_prob(model.class1, taus);
    const double rated0 = 1.0 - rej0;
    const double rated1 = 1.0 - rej1;

    RatedDist d0;
    RatedDist d1;
    if (rated0 * rated1 >= kRatedMassFloor) {
        if (method.kind == Method::Kind::Quadrature) {
            const QuadGrid grid = build_quad_grid(model, taus);
            d0 = make_dist(grid.lambda, grid.w0);
            d1 = make_dist(grid.lambda, grid.w1);
        } else {
            std::vector<double> lam1 = collect_rated(model, taus, 1, method.n,
                                                     method.seed,
                                                     resolve_threads(method.n_threads));
            std::vector<double> lam0 = collect_rated(model, taus, 0, method.n,
                                                     method.seed,
                                                     resolve_threads(method.n_threads));
            if (lam0.empty() || lam1.empty()) {
                throw estimation_error("no rated samples in one of the classes");
            }
            std::vector<double> w1(lam1.size(), 1.0);
            std::vector<double> w0(lam0.size(), 1.0);
            d1 = make_dist(std::move(lam1), std::move(w1));
            d0 = make_dist(std::move(lam0), std::move(w0));
        }
    }

    RocCurve curve;
    curve.completed = complete;
    curve.points.push_back({0.0, 0.0, RocPoint::Tag::Rated});
    if (!d0.lambda.empty() || !d1.lambda.empty()) {
        double t_lo = std::numeric_limits<double>::infinity();
        double t_hi = -std::numeric_limits<double>::infinity();
        for (const RatedDist* d : {&d0, &d1}) {
            if (!d->lambda.empty()) {
                t_lo = std::min(t_lo, d->lambda.front());
                t_hi = std::max(t_hi, d->lambda.back());
            }
        }
        for (int k = 0; k < n_thresholds; ++k) {
            const double t = t_hi - (t_hi - t_lo) * k / (n_thresholds - 1.0);
            curve.points.push_back({rated0 * survival(d0, t), rated1 * survival(d1, t),
                                    RocPoint::Tag::Rated});
        }
    }
    curve.points.push_back({rated0, rated1, RocPoint::Tag::Endpoint});
    curve.endpoint = {rated0, rated1};

    const bool any_unrated = rej0 > 0.0 || rej1 > 0.0;
    if (complete && any_unrated) {
        curve.gist_extension = {{rated0, rated1, RocPoint::Tag::GistExtension},
                                {1.0, rated1, RocPoint::Tag::GistExtension}};
        curve.guess_segment = {{rated0, rated1, RocPoint::Tag::GuessSegment},
                               {1.0, 1.0, RocPoint::Tag::GuessSegment}};
        curve.points.push_back({1.0, 1.0, RocPoint::Tag::GuessSegment});
    }
    return curve;
}

}  // namespace truncobs
