#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace truncobs {

namespace {

std::vector<TruncationVector> enumerate_points(const SweepGrid& grid, int m) {
    std::vector<TruncationVector> points;
    if (grid.include_untruncated) {
        points.push_back({std::vector<double>(m, kNoTruncation)});
    }
    if (grid.shared_threshold || grid.axes.size() == 1) {
        const GridAxis& ax = grid.axes[0];
        for (int k = 0; k < ax.steps; ++k) {
            const double tau = ax.lo + (ax.hi - ax.lo) * k / (ax.steps - 1.0);
            if (grid.shared_threshold) {
                points.push_back({std::vector<double>(m, tau)});
            } else {
                points.push_back({std::vector<double>{tau}});
            }
        }
        return points;
    }
    // full per-axis product, lexicographic with the first axis slowest
    std::vector<int> idx(grid.axes.size(), 0);
    while (true) {
        std::vector<double> taus(grid.axes.size());
        for (std::size_t d = 0; d < grid.axes.size(); ++d) {
            const GridAxis& ax = grid.axes[d];
            taus[d] = ax.lo + (ax.hi - ax.lo) * idx[d] / (ax.steps - 1.0);
        }
        points.push_back({std::move(taus)});
        int d = static_cast<int>(grid.axes.size()) - 1;
        while (d >= 0 && ++idx[d] == grid.axes[d].steps) {
            idx[d] = 0;
            --d;
        }
        if (d < 0) {
            break;
        }
    }
    return points;
}

}  // namespace

void SweepGrid::validate(int model_dim) const {
    if (axes.empty()) {
        throw std::invalid_argument("sweep grid needs at least one axis");
    }
    if (shared_threshold) {
        if (axes.size() != 1) {
            throw std::invalid_argument("shared-threshold sweep takes exactly one axis");
        }
    } else if (static_cast<int>(axes.size()) != model_dim) {
        throw std::invalid_argument("sweep grid dimensionality must match the model");
    }
    for (const GridAxis& ax : axes) {
        if (!(ax.lo < ax.hi) || ax.steps < 2) {
            throw std::invalid_argument("grid axis requires lo < hi and steps >= 2");
        }
    }
}

long long SweepGrid::size() const {
    long long n = 1;
    for (const GridAxis& ax : axes) {
        n *= ax.steps;
    }
    return n;
}

std::vector<SweepRecord> sweep(const FeatureModel& model, const SweepGrid& grid,
                               const Method& method) {
    model.validate();
    grid.validate(model.dim());
    const std::vector<TruncationVector> points = enumerate_points(grid, model.dim());
    std::vector<SweepRecord> records(points.size());

    // Parallelism goes across grid points; the per-point evaluation stays
    // single-threaded so every point sees the same substreams.
    Method point_method = method;
    point_method.n_threads = 1;
    const int threads = resolve_threads(method.n_threads);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < points.size();
             k = next.fetch_add(1)) {
            try {
                SweepRecord& rec = records[k];
                rec.taus = points[k];
                rec.dec = total_auc(model, rec.taus, point_method);
                rec.asymptote = asymptotic_auc(model, rec.taus);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

SweepRecord optimize(const FeatureModel& model, const SweepGrid& grid,
                     const Method& method) {
    const std::vector<SweepRecord> records = sweep(model, grid, method);
    std::size_t best = 0;
    for (std::size_t k = 1; k < records.size(); ++k) {
        // strict improvement only: ties keep the earlier (lexicographically
        // smaller) threshold, with the -inf reference point first
        if (records[k].dec.az > records[best].dec.az) {
            best = k;
        }
    }
    return records[best];
}

double truncation_efficiency(const FeatureModel& model, const SweepGrid& grid,
                             double sigma, const Method& method) {
    FeatureModel reference = model;
    reference.noise.sigma = 0.0;
    const TruncationVector no_trunc{std::vector<double>(model.dim(), kNoTruncation)};
    const AucDecomposition ref = total_auc(reference, no_trunc, method);
    if (ref.az <= 0.5 + 2.0 * ref.az1_se) {
        throw degenerate_model_error("untruncated noiseless performance is at chance");
    }

    FeatureModel variant = model;
    variant.noise.sigma = sigma;
    const SweepRecord best = optimize(variant, grid, method);
    return best.dec.az / ref.az;
}

}  // namespace truncobs
