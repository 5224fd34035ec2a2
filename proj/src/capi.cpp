#include "truncobs.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/oracle.hpp"
#include "core/sweep.hpp"

namespace {

thread_local std::string g_last_error;

truncobs_status fail(truncobs_status status, const char* what) {
    g_last_error = what != nullptr ? what : "unknown error";
    return status;
}

// Translate in-flight exceptions from the C++ core into status codes.
truncobs_status translate() {
    try {
        throw;
    } catch (const truncobs::degenerate_truncation_error& e) {
        return fail(TRUNCOBS_ERR_DEGENERATE, e.what());
    } catch (const truncobs::degenerate_model_error& e) {
        return fail(TRUNCOBS_ERR_DEGENERATE, e.what());
    } catch (const truncobs::estimation_error& e) {
        return fail(TRUNCOBS_ERR_ESTIMATION, e.what());
    } catch (const std::domain_error& e) {
        return fail(TRUNCOBS_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(TRUNCOBS_ERR_NOMEM, e.what());
    } catch (const std::exception& e) {
        return fail(TRUNCOBS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(TRUNCOBS_ERR_INTERNAL, "unknown exception");
    }
}

truncobs::TruncationVector make_taus(const truncobs_model* model, const double* taus);

truncobs::Method make_method(truncobs_method method, long long n, uint64_t seed,
                             int n_threads) {
    if (method == TRUNCOBS_METHOD_QUADRATURE) {
        return truncobs::Method::quadrature();
    }
    return truncobs::Method::monte_carlo(n, seed, n_threads > 0 ? n_threads : 0);
}

void fill_auc(const truncobs::AucDecomposition& dec, truncobs_auc* out) {
    out->az = dec.az;
    out->az1 = dec.az1;
    out->az2 = dec.az2;
    out->az3 = dec.az3;
    out->rej0 = dec.rej0;
    out->rej1 = dec.rej1;
    out->az1_se = dec.az1_se;
}

truncobs::SweepGrid make_grid(const double* lo, const double* hi, const int* steps,
                              int n_axes, int shared_threshold,
                              int include_untruncated) {
    truncobs::SweepGrid grid;
    for (int d = 0; d < n_axes; ++d) {
        grid.axes.push_back({lo[d], hi[d], steps[d]});
    }
    grid.shared_threshold = shared_threshold != 0;
    grid.include_untruncated = include_untruncated != 0;
    return grid;
}

}  // namespace

struct truncobs_model {
    truncobs::FeatureModel model;
};

struct truncobs_roc {
    truncobs::RocCurve curve;
    std::vector<truncobs::RocPoint> rows;  // points + annotation rows, CSV order
};

struct truncobs_sweep {
    std::vector<truncobs::SweepRecord> records;
    int dim;
};

namespace {

truncobs::TruncationVector make_taus(const truncobs_model* model, const double* taus) {
    const int m = model->model.dim();
    return {std::vector<double>(taus, taus + m)};
}

}  // namespace

extern "C" {

const char* truncobs_version(void) { return "truncobs 1.0.0"; }

const char* truncobs_status_name(truncobs_status status) {
    switch (status) {
        case TRUNCOBS_OK: return "ok";
        case TRUNCOBS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TRUNCOBS_ERR_DOMAIN: return "domain error";
        case TRUNCOBS_ERR_DEGENERATE: return "degenerate configuration";
        case TRUNCOBS_ERR_ESTIMATION: return "estimation failure";
        case TRUNCOBS_ERR_NOMEM: return "out of memory";
        case TRUNCOBS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* truncobs_last_error(void) { return g_last_error.c_str(); }

truncobs_status truncobs_model_create(int m, const double* mu0, const double* sd0,
                                      const double* mu1, const double* sd1,
                                      double internal_sigma, truncobs_model** out) {
    if (out == nullptr || mu0 == nullptr || sd0 == nullptr || mu1 == nullptr ||
        sd1 == nullptr || m < 1) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null or empty model inputs");
    }
    try {
        truncobs::FeatureModel model;
        model.class0 = {{mu0, mu0 + m}, {sd0, sd0 + m}, 0};
        model.class1 = {{mu1, mu1 + m}, {sd1, sd1 + m}, 1};
        model.noise = {internal_sigma};
        model.validate();
        *out = new truncobs_model{std::move(model)};
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

void truncobs_model_free(truncobs_model* model) { delete model; }

int truncobs_model_dim(const truncobs_model* model) {
    return model != nullptr ? model->model.dim() : 0;
}

truncobs_status truncobs_rejection_probs(const truncobs_model* model,
                                         const double* taus, double* rej0,
                                         double* rej1) {
    if (model == nullptr || taus == nullptr || rej0 == nullptr || rej1 == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        const auto tv = make_taus(model, taus);
        tv.validate();
        *rej0 = truncobs::full_rejection_prob(model->model.class0, tv);
        *rej1 = truncobs::full_rejection_prob(model->model.class1, tv);
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

truncobs_status truncobs_asymptotic_auc(const truncobs_model* model,
                                        const double* taus, double* out) {
    if (model == nullptr || taus == nullptr || out == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        *out = truncobs::asymptotic_auc(model->model, make_taus(model, taus));
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

truncobs_status truncobs_total_auc(const truncobs_model* model, const double* taus,
                                   truncobs_method method, long long n_samples,
                                   uint64_t seed, int n_threads, truncobs_auc* out) {
    if (model == nullptr || taus == nullptr || out == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        const auto dec = truncobs::total_auc(model->model, make_taus(model, taus),
                                             make_method(method, n_samples, seed,
                                                         n_threads));
        fill_auc(dec, out);
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

truncobs_status truncobs_forced_choice(const truncobs_model* model,
                                       const double* taus, long long n_pairs,
                                       uint64_t seed, int literal_guessing,
                                       int n_threads, double* auc_hat, double* se) {
    if (model == nullptr || taus == nullptr || auc_hat == nullptr || se == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        const auto result = truncobs::forced_choice_auc(
            model->model, make_taus(model, taus), n_pairs, seed,
            literal_guessing != 0, n_threads);
        *auc_hat = result.auc_hat;
        *se = result.se;
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

truncobs_status truncobs_empirical_rejection(const truncobs_model* model,
                                             const double* taus, int label,
                                             long long n, uint64_t seed,
                                             double* out) {
    if (model == nullptr || taus == nullptr || out == nullptr ||
        (label != 0 && label != 1)) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument or bad label");
    }
    try {
        *out = truncobs::empirical_rejection(model->model, make_taus(model, taus),
                                             label, n, seed);
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

truncobs_status truncobs_roc_compute(const truncobs_model* model, const double* taus,
                                     truncobs_method method, long long n_samples,
                                     uint64_t seed, int n_thresholds, int complete,
                                     truncobs_roc** out) {
    if (model == nullptr || taus == nullptr || out == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        auto curve = truncobs::roc_curve(model->model, make_taus(model, taus),
                                         make_method(method, n_samples, seed, 0),
                                         n_thresholds, complete != 0);
        auto handle = std::make_unique<truncobs_roc>();
        // CSV order: rated points through the endpoint, then the gist
        // annotation, then the guessing segment ending at (1,1).
        for (const auto& p : curve.points) {
            if (p.tag != truncobs::RocPoint::Tag::GuessSegment) {
                handle->rows.push_back(p);
            }
        }
        handle->rows.insert(handle->rows.end(), curve.gist_extension.begin(),
                            curve.gist_extension.end());
        handle->rows.insert(handle->rows.end(), curve.guess_segment.begin(),
                            curve.guess_segment.end());
        handle->curve = std::move(curve);
        *out = handle.release();
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

long long truncobs_roc_size(const truncobs_roc* roc) {
    return roc != nullptr ? static_cast<long long>(roc->rows.size()) : 0;
}

truncobs_status truncobs_roc_point(const truncobs_roc* roc, long long index,
                                   double* fpf, double* tpf, int* segment) {
    if (roc == nullptr || fpf == nullptr || tpf == nullptr || segment == nullptr ||
        index < 0 || index >= static_cast<long long>(roc->rows.size())) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "bad roc point index");
    }
    const auto& p = roc->rows[static_cast<std::size_t>(index)];
    *fpf = p.fpf;
    *tpf = p.tpf;
    switch (p.tag) {
        case truncobs::RocPoint::Tag::Rated: *segment = TRUNCOBS_SEG_RATED; break;
        case truncobs::RocPoint::Tag::Endpoint: *segment = TRUNCOBS_SEG_ENDPOINT; break;
        case truncobs::RocPoint::Tag::GistExtension: *segment = TRUNCOBS_SEG_GIST; break;
        case truncobs::RocPoint::Tag::GuessSegment: *segment = TRUNCOBS_SEG_GUESS; break;
    }
    return TRUNCOBS_OK;
}

truncobs_status truncobs_roc_area(const truncobs_roc* roc, double* area) {
    if (roc == nullptr || area == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    *area = roc->curve.trapezoid_area();
    return TRUNCOBS_OK;
}

void truncobs_roc_free(truncobs_roc* roc) { delete roc; }

truncobs_status truncobs_sweep_run(const truncobs_model* model, const double* lo,
                                   const double* hi, const int* steps, int n_axes,
                                   int shared_threshold, int include_untruncated,
                                   truncobs_method method, long long n_samples,
                                   uint64_t seed, int n_threads,
                                   truncobs_sweep** out) {
    if (model == nullptr || lo == nullptr || hi == nullptr || steps == nullptr ||
        out == nullptr || n_axes < 1) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null or empty sweep inputs");
    }
    try {
        const auto grid =
            make_grid(lo, hi, steps, n_axes, shared_threshold, include_untruncated);
        truncobs::Method m = make_method(method, n_samples, seed, n_threads);
        m.n_threads = n_threads;
        auto records = truncobs::sweep(model->model, grid, m);
        *out = new truncobs_sweep{std::move(records), model->model.dim()};
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

long long truncobs_sweep_size(const truncobs_sweep* sweep) {
    return sweep != nullptr ? static_cast<long long>(sweep->records.size()) : 0;
}

truncobs_status truncobs_sweep_record(const truncobs_sweep* sweep, long long index,
                                      double* taus, truncobs_auc* dec,
                                      double* asymptote) {
    if (sweep == nullptr || taus == nullptr || dec == nullptr || index < 0 ||
        index >= static_cast<long long>(sweep->records.size())) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "bad sweep record index");
    }
    const auto& rec = sweep->records[static_cast<std::size_t>(index)];
    std::memcpy(taus, rec.taus.taus.data(), sizeof(double) * rec.taus.taus.size());
    fill_auc(rec.dec, dec);
    if (asymptote != nullptr) {
        *asymptote = rec.asymptote;
    }
    return TRUNCOBS_OK;
}

truncobs_status truncobs_sweep_argmax(const truncobs_sweep* sweep, long long* index) {
    if (sweep == nullptr || index == nullptr || sweep->records.empty()) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "empty sweep");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < sweep->records.size(); ++k) {
        if (sweep->records[k].dec.az > sweep->records[best].dec.az) {
            best = k;
        }
    }
    *index = static_cast<long long>(best);
    return TRUNCOBS_OK;
}

void truncobs_sweep_free(truncobs_sweep* sweep) { delete sweep; }

truncobs_status truncobs_truncation_efficiency(const truncobs_model* model,
                                               const double* lo, const double* hi,
                                               const int* steps, int n_axes,
                                               int shared_threshold, double sigma,
                                               truncobs_method method,
                                               long long n_samples, uint64_t seed,
                                               int n_threads, double* out) {
    if (model == nullptr || lo == nullptr || hi == nullptr || steps == nullptr ||
        out == nullptr) {
        return fail(TRUNCOBS_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        const auto grid = make_grid(lo, hi, steps, n_axes, shared_threshold, 1);
        truncobs::Method m = make_method(method, n_samples, seed, n_threads);
        m.n_threads = n_threads;
        *out = truncobs::truncation_efficiency(model->model, grid, sigma, m);
        return TRUNCOBS_OK;
    } catch (...) {
        return translate();
    }
}

}  // extern "C"
