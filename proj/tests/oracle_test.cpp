#include "doctest.h"

#include <cmath>

#include "core/oracle.hpp"

using namespace truncobs;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

FeatureModel reference_model(double sigma1 = 1.0, double noise = 0.0) {
    FeatureModel model;
    model.class0 = {{0.0}, {1.0}, 0};
    model.class1 = {{0.75}, {sigma1}, 1};
    model.noise = {noise};
    return model;
}

}  // namespace

TEST_CASE("symmetric task sits at chance") {
    FeatureModel model;
    model.class0 = {{0.4}, {1.3}, 0};
    model.class1 = {{0.4}, {1.3}, 1};
    const auto result = forced_choice_auc(model, TruncationVector{{-kInf}}, 200000, 5);
    CHECK(std::fabs(result.auc_hat - 0.5) <= 3.0 * result.se);
}

TEST_CASE("untruncated noiseless pairs reproduce the binormal value") {
    const auto result =
        forced_choice_auc(reference_model(), TruncationVector{{-kInf}}, 400000, 21);
    CHECK(std::fabs(result.auc_hat - 0.7020584547) <= 3.0 * result.se);
}

TEST_CASE("extreme internal noise lands on the asymptote") {
    const FeatureModel model = reference_model(1.0, 50.0);
    const auto result = forced_choice_auc(model, TruncationVector{{0.0}}, 400000, 33);
    CHECK(std::fabs(result.auc_hat - 0.6366863238) <= 3.0 * result.se + 0.005);
}

TEST_CASE("literal coin-flip guessing agrees with the analytic half credit") {
    const FeatureModel model = reference_model();
    const TruncationVector taus{{0.5}};
    const auto analytic = forced_choice_auc(model, taus, 400000, 8, false);
    const auto literal = forced_choice_auc(model, taus, 400000, 8, true);
    const double combined = std::hypot(analytic.se, literal.se);
    CHECK(std::fabs(analytic.auc_hat - literal.auc_hat) <= 3.0 * combined);
}

TEST_CASE("forced choice determinism and result invariants") {
    const FeatureModel model = reference_model(1.0, 0.5);
    const TruncationVector taus{{0.0}};
    const auto a = forced_choice_auc(model, taus, 100000, 55);
    const auto b = forced_choice_auc(model, taus, 100000, 55);
    CHECK(a.wins == b.wins);
    CHECK(a.auc_hat == b.auc_hat);
    CHECK(a.auc_hat >= 0.0);
    CHECK(a.auc_hat <= 1.0);
    CHECK(a.se ==
          doctest::Approx(std::sqrt(a.auc_hat * (1.0 - a.auc_hat) / a.n_pairs))
              .epsilon(1e-12));
    CHECK_THROWS_AS(forced_choice_auc(model, taus, 0, 1), std::invalid_argument);
}

TEST_CASE("empirical rejection fractions") {
    FeatureModel m3;
    m3.class0 = {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, 0};
    m3.class1 = {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, 1};
    const TruncationVector taus{{0.0, 0.0, 0.0}};
    const long long n = 1000000;
    const double frac = empirical_rejection(m3, taus, 0, n, 3);
    const double se = std::sqrt(0.125 * 0.875 / n);
    CHECK(std::fabs(frac - 0.125) <= 3.0 * se);

    const FeatureModel m1 = reference_model();
    CHECK(empirical_rejection(m1, TruncationVector{{-kInf}}, 0, 100000, 1) == 0.0);
    const double frac1 = empirical_rejection(m1, TruncationVector{{0.0}}, 1, n, 4);
    const double se1 = std::sqrt(0.2266 * (1.0 - 0.2266) / n);
    CHECK(std::fabs(frac1 - 0.2266273524) <= 3.0 * se1);
}

TEST_CASE("oracle matches the analytic decomposition") {
    const FeatureModel model = reference_model(3.0, 0.5);
    const TruncationVector taus{{0.0}};
    const auto dec = total_auc(model, taus, Method::quadrature());
    const auto fc = forced_choice_auc(model, taus, 400000, 17);
    CHECK(std::fabs(fc.auc_hat - dec.az) <= 3.0 * fc.se);
}
