#include "doctest.h"

#include <cmath>

#include "core/roc.hpp"

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

FeatureModel symmetric_model(double noise = 0.0) {
    FeatureModel model;
    model.class0 = {{0.2}, {1.1}, 0};
    model.class1 = {{0.2}, {1.1}, 1};
    model.noise = {noise};
    return model;
}

}  // namespace

TEST_CASE("binormal closed form") {
    CHECK(binormal_auc(0.0, 1.0, 0.75, 1.0) ==
          doctest::Approx(0.7020584547).epsilon(1e-9));
    CHECK(binormal_auc(0.0, 1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(binormal_auc(0.0, 1.0, 3.0, 1.0) ==
          doctest::Approx(0.9830525732).epsilon(1e-9));
    CHECK_THROWS_AS(binormal_auc(0.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("gist and guessing components") {
    const FeatureModel model = reference_model();
    CHECK(gist_component(model, TruncationVector{{-kInf}}) == 0.0);
    CHECK(guess_component(model, TruncationVector{{-kInf}}) == 0.0);
    CHECK(gist_component(model, TruncationVector{{0.0}}) ==
          doctest::Approx(0.3866863238).epsilon(1e-9));
    CHECK(guess_component(model, TruncationVector{{0.0}}) ==
          doctest::Approx(0.0566568381).epsilon(1e-9));

    const FeatureModel sym = symmetric_model();
    for (double tau = -1.0; tau <= 1.5; tau += 0.5) {
        const double r = full_rejection_prob(sym.class0, TruncationVector{{tau}});
        CHECK(gist_component(sym, TruncationVector{{tau}}) ==
              doctest::Approx((1.0 - r) * r).epsilon(1e-12));
    }
}

TEST_CASE("analysis component, exchangeable classes") {
    const FeatureModel sym = symmetric_model(0.5);
    const TruncationVector taus{{0.4}};
    const double r = full_rejection_prob(sym.class0, taus);
    const auto [az1, se] = analysis_component(sym, taus, Method::quadrature());
    CHECK(az1 == doctest::Approx((1.0 - r) * (1.0 - r) * 0.5).epsilon(1e-6));
    CHECK(se == 0.0);
}

TEST_CASE("quadrature recovers the binormal limit") {
    const FeatureModel model = reference_model();
    const auto dec = total_auc(model, TruncationVector{{-kInf}}, Method::quadrature());
    CHECK(dec.az == doctest::Approx(0.7020584547).epsilon(1e-6));
    CHECK(dec.az1 == dec.az);
    CHECK(dec.az2 == 0.0);
    CHECK(dec.az3 == 0.0);
}

TEST_CASE("monte carlo and quadrature agree") {
    const FeatureModel model = reference_model(1.0, 0.5);
    const TruncationVector taus{{0.0}};
    const auto quad = total_auc(model, taus, Method::quadrature());
    const auto mc = total_auc(model, taus, Method::monte_carlo(400000, 314, 1));
    CHECK(std::fabs(mc.az - quad.az) <= 3.0 * mc.az1_se);
}

TEST_CASE("decomposition identity and component bounds") {
    const FeatureModel model = reference_model(3.0, 0.8);
    for (double tau : {-1.0, 0.0, 0.5, 1.5}) {
        const auto dec = total_auc(model, TruncationVector{{tau}}, Method::quadrature());
        CHECK(std::fabs(dec.az - (dec.az1 + dec.az2 + dec.az3)) <= 1e-12);
        CHECK(dec.az1 >= 0.0);
        CHECK(dec.az2 == (1.0 - dec.rej1) * dec.rej0);
        CHECK(dec.az3 == 0.5 * dec.rej1 * dec.rej0);
    }
}

TEST_CASE("gist and guessing are independent of internal noise") {
    const TruncationVector taus{{0.3}};
    const auto base = total_auc(reference_model(1.0, 0.0), taus, Method::quadrature());
    for (double sigma : {0.5, 2.0, 10.0}) {
        const auto dec = total_auc(reference_model(1.0, sigma), taus, Method::quadrature());
        CHECK(dec.az2 == base.az2);  // bit-identical
        CHECK(dec.az3 == base.az3);
    }
}

TEST_CASE("asymptotic area") {
    const FeatureModel model = reference_model();
    CHECK(asymptotic_auc(model, TruncationVector{{0.0}}) ==
          doctest::Approx(0.6366863238).epsilon(1e-9));
    CHECK(asymptotic_auc(model, TruncationVector{{-kInf}}) == 0.5);
    CHECK(asymptotic_auc(symmetric_model(), TruncationVector{{0.7}}) == 0.5);
}

TEST_CASE("high internal noise converges to the asymptote") {
    for (double sigma1 : {0.5, 1.0, 3.0}) {
        const FeatureModel model = reference_model(sigma1, 50.0);
        for (double tau : {-2.0, 0.0, 0.5, 2.0}) {
            const TruncationVector taus{{tau}};
            const auto dec = total_auc(model, taus, Method::quadrature());
            CHECK(std::fabs(dec.az - asymptotic_auc(model, taus)) <= 0.01);
        }
    }
}

TEST_CASE("roc curve endpoint and completion") {
    const FeatureModel model = reference_model();
    const TruncationVector taus{{0.0}};
    const RocCurve curve = roc_curve(model, taus, Method::quadrature(), 201);
    CHECK(curve.endpoint.first == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(curve.endpoint.second == doctest::Approx(0.7733726476).epsilon(1e-9));
    CHECK(curve.points.back().fpf == 1.0);
    CHECK(curve.points.back().tpf == 1.0);
    CHECK(curve.gist_extension.size() == 2);
    CHECK(curve.guess_segment.size() == 2);

    // monotone in both coordinates
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        CHECK(curve.points[k].fpf >= curve.points[k - 1].fpf);
        CHECK(curve.points[k].tpf >= curve.points[k - 1].tpf);
    }
}

TEST_CASE("untruncated roc curve needs no completion") {
    const FeatureModel model = reference_model();
    const RocCurve curve = roc_curve(model, TruncationVector{{-kInf}},
                                     Method::quadrature(), 201);
    CHECK(curve.endpoint.first == 1.0);
    CHECK(curve.endpoint.second == 1.0);
    CHECK(curve.gist_extension.empty());
    CHECK(curve.guess_segment.empty());
    CHECK(curve.points.back().fpf == 1.0);
    CHECK(curve.points.back().tpf == 1.0);
}

TEST_CASE("curve area reproduces the total area") {
    const FeatureModel model = reference_model(1.0, 0.5);
    const TruncationVector taus{{0.2}};
    const auto dec = total_auc(model, taus, Method::quadrature());
    const RocCurve quad = roc_curve(model, taus, Method::quadrature(), 2001);
    CHECK(std::fabs(quad.trapezoid_area() - dec.az) <= 1e-3);

    const RocCurve mc = roc_curve(model, taus, Method::monte_carlo(200000, 9, 1), 512);
    CHECK(std::fabs(mc.trapezoid_area() - dec.az) <= 0.005);
}

TEST_CASE("incomplete analysis reports only the partial curve") {
    const FeatureModel model = reference_model();
    const TruncationVector taus{{0.0}};
    const RocCurve partial = roc_curve(model, taus, Method::quadrature(), 201, false);
    CHECK_FALSE(partial.completed);
    CHECK(partial.guess_segment.empty());
    CHECK(partial.points.back().fpf == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(partial.points.back().tpf == doctest::Approx(0.7733726476).epsilon(1e-9));
}

TEST_CASE("mann-whitney handles ties at half weight") {
    const auto [auc, se] = mann_whitney_auc({1.0, 2.0, 3.0}, {1.0, 0.0});
    CHECK(auc == doctest::Approx(5.5 / 6.0).epsilon(1e-12));
    CHECK(se > 0.0);
    CHECK_THROWS_AS(mann_whitney_auc({}, {1.0}), estimation_error);
}

TEST_CASE("quadrature rejects multivariate models") {
    FeatureModel model;
    model.class0 = {{0.0, 0.0}, {1.0, 1.0}, 0};
    model.class1 = {{0.75, 0.75}, {1.0, 1.0}, 1};
    CHECK_THROWS_AS(total_auc(model, TruncationVector{{0.0, 0.0}}, Method::quadrature()),
                    std::invalid_argument);
}

TEST_CASE("monte carlo estimates are deterministic in the seed") {
    const FeatureModel model = reference_model(1.0, 0.5);
    const TruncationVector taus{{0.0}};
    const auto a = total_auc(model, taus, Method::monte_carlo(50000, 77, 1));
    const auto b = total_auc(model, taus, Method::monte_carlo(50000, 77, 1));
    CHECK(a.az == b.az);
    CHECK(a.az1_se == b.az1_se);
}
