#include "oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace truncobs {

namespace {

constexpr long long kChunkSize = 1 << 16;

}  // namespace

ForcedChoiceResult forced_choice_auc(const FeatureModel& model,
                                     const TruncationVector& taus, long long n_pairs,
                                     std::uint64_t seed, bool literal_guessing,
                                     int n_threads) {
    if (n_pairs < 1) {
        throw std::invalid_argument("need at least one forced-choice pair");
    }
    model.validate();
    taus.validate();
    const int m = model.dim();
    const long long n_chunks = (n_pairs + kChunkSize - 1) / kChunkSize;
    std::vector<double> chunk_wins(static_cast<std::size_t>(n_chunks), 0.0);

    const auto body = [&](long long c) {
        const long long begin = c * kChunkSize;
        const long long count = std::min(kChunkSize, n_pairs - begin);
        Rng rng(substream_seed(seed, 0xFC00000000ULL | static_cast<std::uint64_t>(c)));
        double f[kMaxFeatures];
        double wins = 0.0;
        for (long long p = 0; p < count; ++p) {
            for (int i = 0; i < m; ++i) {
                f[i] = model.class1.means[i] + model.class1.stddevs[i] * rng.normal();
            }
            const RatingOutcome pos =
                rate_image(std::span<const double>(f, static_cast<std::size_t>(m)),
                           model, taus, rng);
            for (int i = 0; i < m; ++i) {
                f[i] = model.class0.means[i] + model.class0.stddevs[i] * rng.normal();
            }
            const RatingOutcome neg =
                rate_image(std::span<const double>(f, static_cast<std::size_t>(m)),
                           model, taus, rng);
            if (pos.rated && neg.rated) {
                if (pos.lambda > neg.lambda) {
                    wins += 1.0;
                } else if (pos.lambda == neg.lambda) {
                    wins += 0.5;
                }
            } else if (pos.rated && !neg.rated) {
                wins += 1.0;
            } else if (!pos.rated && !neg.rated) {
                if (literal_guessing) {
                    wins += rng.coin() ? 1.0 : 0.0;
                } else {
                    wins += 0.5;
                }
            }
            // unrated positive vs rated negative: loss, no credit
        }
        chunk_wins[static_cast<std::size_t>(c)] = wins;
    };

    const int threads = resolve_threads(n_threads);
    if (threads <= 1 || n_chunks <= 1) {
        for (long long c = 0; c < n_chunks; ++c) {
            body(c);
        }
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < std::min<long long>(threads, n_chunks); ++w) {
            pool.emplace_back([&] {
                for (long long c = next.fetch_add(1); c < n_chunks;
                     c = next.fetch_add(1)) {
                    body(c);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    ForcedChoiceResult result;
    result.n_pairs = n_pairs;
    for (double w : chunk_wins) {
        result.wins += w;
    }
    result.auc_hat = result.wins / static_cast<double>(n_pairs);
    result.se = std::sqrt(std::max(result.auc_hat * (1.0 - result.auc_hat), 0.0) /
                          static_cast<double>(n_pairs));
    return result;
}

double empirical_rejection(const FeatureModel& model, const TruncationVector& taus,
                           int label, long long n, std::uint64_t seed) {
    if (n < 10'000) {
        throw std::invalid_argument("rejection estimate requires n >= 10000");
    }
    model.validate();
    taus.validate();
    const ClassParams& params = model.params(label);
    const int m = model.dim();
    long long unrated = 0;
    const long long n_chunks = (n + kChunkSize - 1) / kChunkSize;
    double f[kMaxFeatures];
    for (long long c = 0; c < n_chunks; ++c) {
        const long long count = std::min(kChunkSize, n - c * kChunkSize);
        Rng rng(substream_seed(seed, 0xE200000000ULL |
                                         (static_cast<std::uint64_t>(label) << 32) |
                                         static_cast<std::uint64_t>(c)));
        for (long long s = 0; s < count; ++s) {
            for (int i = 0; i < m; ++i) {
                f[i] = params.means[i] + params.stddevs[i] * rng.normal();
            }
            if (pattern_from_features(
                    std::span<const double>(f, static_cast<std::size_t>(m)), taus)
                    .unrated()) {
                ++unrated;
            }
        }
    }
    return static_cast<double>(unrated) / static_cast<double>(n);
}

}  // namespace truncobs
