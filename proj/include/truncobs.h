/* truncobs -- ideal-observer ROC analysis under feature truncation.
 *
 * C interface to the core library. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns a status code
 * and leaves a human-readable message retrievable via truncobs_last_error()
 * (thread-local). Thresholds use -INFINITY to mean "never truncated".
 */
#ifndef TRUNCOBS_H
#define TRUNCOBS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct truncobs_model truncobs_model;
typedef struct truncobs_roc truncobs_roc;
typedef struct truncobs_sweep truncobs_sweep;

typedef enum {
    TRUNCOBS_OK = 0,
    TRUNCOBS_ERR_INVALID_ARGUMENT = 1,
    TRUNCOBS_ERR_DOMAIN = 2,
    TRUNCOBS_ERR_DEGENERATE = 3,
    TRUNCOBS_ERR_ESTIMATION = 4,
    TRUNCOBS_ERR_NOMEM = 5,
    TRUNCOBS_ERR_INTERNAL = 6
} truncobs_status;

typedef enum {
    TRUNCOBS_METHOD_QUADRATURE = 0, /* exact grid integration, M == 1 only */
    TRUNCOBS_METHOD_MONTE_CARLO = 1
} truncobs_method;

/* Area decomposition: az = az1 (analysis) + az2 (gist) + az3 (guessing). */
typedef struct {
    double az;
    double az1;
    double az2;
    double az3;
    double rej0; /* full-rejection probability, negative class */
    double rej1; /* full-rejection probability, positive class */
    double az1_se;
} truncobs_auc;

typedef enum {
    TRUNCOBS_SEG_RATED = 0,
    TRUNCOBS_SEG_ENDPOINT = 1,
    TRUNCOBS_SEG_GIST = 2,
    TRUNCOBS_SEG_GUESS = 3
} truncobs_segment;

const char* truncobs_version(void);
const char* truncobs_status_name(truncobs_status status);

/* Message describing the most recent failure on this thread. */
const char* truncobs_last_error(void);

/* Model: m features, per-class means and standard deviations (arrays of
 * length m), plus the internal-noise standard deviation. */
truncobs_status truncobs_model_create(int m, const double* mu0, const double* sd0,
                                      const double* mu1, const double* sd1,
                                      double internal_sigma, truncobs_model** out);
void truncobs_model_free(truncobs_model* model);
int truncobs_model_dim(const truncobs_model* model);

/* Analytic full-rejection probabilities for the given thresholds. */
truncobs_status truncobs_rejection_probs(const truncobs_model* model,
                                         const double* taus, double* rej0,
                                         double* rej1);

/* High-internal-noise asymptote (1 + rej0 - rej1) / 2. */
truncobs_status truncobs_asymptotic_auc(const truncobs_model* model,
                                        const double* taus, double* out);

/* Total area decomposition. n_samples and seed apply to Monte Carlo only;
 * n_threads <= 0 selects a default. */
truncobs_status truncobs_total_auc(const truncobs_model* model, const double* taus,
                                   truncobs_method method, long long n_samples,
                                   uint64_t seed, int n_threads, truncobs_auc* out);

/* Forward Monte Carlo of the two-alternative forced-choice experiment.
 * literal_guessing != 0 scores double-unrated pairs by coin flip instead of
 * the analytic half credit. */
truncobs_status truncobs_forced_choice(const truncobs_model* model,
                                       const double* taus, long long n_pairs,
                                       uint64_t seed, int literal_guessing,
                                       int n_threads, double* auc_hat, double* se);

/* Empirical unrated fraction for class `label` over n sampled images. */
truncobs_status truncobs_empirical_rejection(const truncobs_model* model,
                                             const double* taus, int label,
                                             long long n, uint64_t seed, double* out);

/* ROC curve. complete != 0 appends the completion segments for unrated
 * cases; otherwise only the rated partial curve is produced. */
truncobs_status truncobs_roc_compute(const truncobs_model* model, const double* taus,
                                     truncobs_method method, long long n_samples,
                                     uint64_t seed, int n_thresholds, int complete,
                                     truncobs_roc** out);
long long truncobs_roc_size(const truncobs_roc* roc);
truncobs_status truncobs_roc_point(const truncobs_roc* roc, long long index,
                                   double* fpf, double* tpf, int* segment);
truncobs_status truncobs_roc_area(const truncobs_roc* roc, double* area);
void truncobs_roc_free(truncobs_roc* roc);

/* Threshold sweep. Axes are given as parallel arrays lo/hi/steps of length
 * n_axes; n_axes must equal the model dimension, or 1 with shared_threshold
 * to scan one common threshold. include_untruncated prepends a tau = -inf
 * reference record. All grid points share the same seed (common random
 * numbers). */
truncobs_status truncobs_sweep_run(const truncobs_model* model, const double* lo,
                                   const double* hi, const int* steps, int n_axes,
                                   int shared_threshold, int include_untruncated,
                                   truncobs_method method, long long n_samples,
                                   uint64_t seed, int n_threads,
                                   truncobs_sweep** out);
long long truncobs_sweep_size(const truncobs_sweep* sweep);
/* taus must have room for the model dimension. asymptote may be NULL. */
truncobs_status truncobs_sweep_record(const truncobs_sweep* sweep, long long index,
                                      double* taus, truncobs_auc* dec,
                                      double* asymptote);
/* Index of the grid argmax (ties break toward smaller thresholds). */
truncobs_status truncobs_sweep_argmax(const truncobs_sweep* sweep, long long* index);
void truncobs_sweep_free(truncobs_sweep* sweep);

/* Best truncated performance at internal noise sigma over the given grid,
 * relative to the untruncated noiseless observer. */
truncobs_status truncobs_truncation_efficiency(const truncobs_model* model,
                                               const double* lo, const double* hi,
                                               const int* steps, int n_axes,
                                               int shared_threshold, double sigma,
                                               truncobs_method method,
                                               long long n_samples, uint64_t seed,
                                               int n_threads, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRUNCOBS_H */
