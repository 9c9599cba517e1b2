/* C interface to the class DIII invariant library.
 *
 * Samples are opaque handles. Every fallible call returns a diii_status; on
 * failure diii_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * diii_string_free().
 */
#ifndef DIII_DIII_H
#define DIII_DIII_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(DIII_BUILDING_LIBRARY)
#define DIII_API __attribute__((visibility("default")))
#else
#define DIII_API
#endif

typedef enum diii_status {
  DIII_OK = 0,
  DIII_VALIDATION = 1,
  DIII_USAGE = 2,
  DIII_PARSE = 3,
  DIII_NUMERICAL = 4,
  DIII_INTERNAL = 5
} diii_status;

typedef enum diii_format { DIII_FORMAT_TEXT = 0, DIII_FORMAT_JSON = 1 } diii_format;

typedef struct diii_sample diii_sample;

typedef struct diii_options {
  double tol;
  double tol_kernel;
  double sign_tol;
  int toeplitz;
  int gerbe;
  int witness;
  /* negative: smallest exact band */
  int bandwidth;
  diii_format format;
} diii_options;

DIII_API void diii_options_default(diii_options* options);

/* Message of the last failure on this thread, "" when none. */
DIII_API const char* diii_last_error(void);
/* Symbolic error code of the last failure, e.g. "SewingViolation". */
DIII_API const char* diii_last_error_code(void);

DIII_API void diii_string_free(char* text);

DIII_API diii_status diii_models_table(char** table);

/* dims holds one size (circle) or two (torus); ndims = 0 picks the default. */
DIII_API diii_status diii_sample_from_model(const char* name, const int* dims, int ndims,
                                            int n, diii_sample** sample);
DIII_API diii_status diii_sample_parse(const char* json, diii_sample** sample);
DIII_API diii_status diii_sample_read(const char* path, diii_sample** sample);
DIII_API diii_status diii_sample_write(const diii_sample* sample, const char* path);
DIII_API diii_status diii_sample_to_json(const diii_sample* sample, char** json);
/* space: 0 circle, 1 torus; kind: 0 sewing, 1 hamiltonian; dims[1] = 1 on the circle. */
DIII_API diii_status diii_sample_info(const diii_sample* sample, int* space, int dims[2],
                                      int* rank, int* kind);
DIII_API void diii_sample_free(diii_sample* sample);

/* passed is set to 1 when every residual is within options->tol. */
DIII_API diii_status diii_check(const diii_sample* sample, const diii_options* options,
                                char** report, int* passed);
DIII_API diii_status diii_invariant(const diii_sample* sample, const diii_options* options,
                                    char** report);
DIII_API diii_status diii_classify(const diii_sample* a, const diii_sample* b,
                                   const diii_options* options, char** report);

/* Pfaffian of a dim x dim skew-symmetric matrix given as row-major
 * interleaved (re, im) doubles; result written to out[0], out[1]. */
DIII_API diii_status diii_pfaffian(const double* entries, int dim, double tol, double out[2]);

#ifdef __cplusplus
}
#endif

#endif
