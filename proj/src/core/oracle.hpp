#pragma once

#include "roc.hpp"

namespace truncobs {

// Outcome of a forward-simulated two-alternative forced-choice experiment.
struct ForcedChoiceResult {
    long long n_pairs = 0;
    double wins = 0.0;  // correct identifications; guesses score 1/2 in expectation
    double auc_hat = 0.0;
    double se = 0.0;
};

// Brute-force validator: draws one positive and one negative image per pair,
// rates both, and scores the pair (rated/rated: higher rating wins, ties 1/2;
// rated positive vs unrated negative: win; unrated positive vs rated
// negative: loss; both unrated: even odds). Shares no code with the analytic
// decomposition beyond the observer's rating rule.
//
// literal_guessing replaces the analytic 1/2 credit for double-unrated pairs
// with actual coin flips.
ForcedChoiceResult forced_choice_auc(const FeatureModel& model,
                                     const TruncationVector& taus, long long n_pairs,
                                     std::uint64_t seed, bool literal_guessing = false,
                                     int n_threads = 0);

// Fraction of sampled class-c images whose every feature is rejected.
double empirical_rejection(const FeatureModel& model, const TruncationVector& taus,
                           int label, long long n, std::uint64_t seed);

}  // namespace truncobs
