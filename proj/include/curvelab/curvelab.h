#ifndef CURVELAB_CURVELAB_H
#define CURVELAB_CURVELAB_H

/*
 * C interface to curvelab: curves on surfaces given by ribbon-graph spines,
 * finite covers, punctured-torus geometry and random-walk experiments.
 *
 * Every fallible call returns a cl_status.  On failure, cl_last_error()
 * describes the problem; the message is thread-local and valid until the
 * next failing call on the same thread.  Strings returned through char**
 * are heap-allocated and must be released with cl_string_free.
 *
 * Words are ASCII: a..z are generators, A..Z their inverses.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CL_API __declspec(dllexport)
#else
#define CL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_ERR_USAGE = 1,    /* malformed input or out-of-range parameter */
  CL_ERR_DOMAIN = 2,   /* mathematically undefined for this input */
  CL_ERR_BUDGET = 3,   /* exhaustive search exceeded its budget */
  CL_ERR_INTERNAL = 4
} cl_status;

typedef struct cl_surface cl_surface;
typedef struct cl_config cl_config;
typedef struct cl_table cl_table;

CL_API const char* cl_last_error(void);
CL_API const char* cl_version(void);
CL_API void cl_string_free(char* s);

/* Surfaces.  spec is "punctured-torus", "pair-of-pants", "genus2-boundary1"
 * or "rose:<order>" with every letter listed once in cyclic order. */
CL_API cl_status cl_surface_create(const char* spec, cl_surface** out);
/* Text form produced by cl_surface_serialize. */
CL_API cl_status cl_surface_parse(const char* text, cl_surface** out);
CL_API void cl_surface_free(cl_surface* s);
CL_API cl_status cl_surface_serialize(const cl_surface* s, char** out);
/* rank is 0 for spines with more than one vertex. */
CL_API cl_status cl_surface_info(const cl_surface* s, int* rank, int* genus, int* boundary, int* euler);

/* Words. */
CL_API cl_status cl_reduce(const char* word, char** out);
CL_API cl_status cl_cyclic_reduce(const char* word, char** out);
CL_API cl_status cl_conjugates_in_ball(const char* word, int rank, int n, uint64_t* out);

/* Intersection numbers on a one-vertex spine. */
CL_API cl_status cl_self_intersection(const cl_surface* s, const char* word, int64_t* out);
CL_API cl_status cl_intersection(const cl_surface* s, const char* p, const char* q, int64_t* out);
CL_API cl_status cl_spiraling(const cl_surface* s, const char* gamma, const char* alpha, int64_t* out);

/* Simple lifting degree. */
typedef struct cl_degree_result {
  int found;
  int degree; /* valid when found */
  int d_max;
  int start_sheet;
  int winding;
} cl_degree_result;

/* witness, when non-null, receives the cycle notation of the covering
 * representation (or an empty string when nothing was found). */
CL_API cl_status cl_lifting_degree(const cl_surface* s, const char* word, int d_max, int jobs,
                                   cl_degree_result* out, char** witness);

/* Subgroups of index d: free group of rank r (free != 0, Hall recursion) or
 * closed genus-g surface group (free == 0, Mednykh formula).  Decimal. */
CL_API cl_status cl_count_subgroups(int free_group, int rank_or_genus, int d, char** out);
/* Transitive permutation tuples up to simultaneous conjugation. */
CL_API cl_status cl_count_subgroup_classes(int rank, int d, uint64_t* out);

/* Punctured-torus geometry in trace coordinates (x, y, z). */
CL_API cl_status cl_geodesic_length(const char* word, double x, double y, double z, double* length);

typedef enum cl_minimize_status { CL_MIN_CONVERGED = 0, CL_MIN_DIVERGED = 1, CL_MIN_BUDGET = 2 } cl_minimize_status;

typedef struct cl_minimize_result {
  cl_minimize_status status;
  double x, y, z;
  double value;
  double gradient_norm;
  int iterations;
  double distance_proxy; /* to the minimizer of l(a) + l(b) */
} cl_minimize_result;

CL_API cl_status cl_minimize_length(const char* word, cl_minimize_result* out);

/* Sampling.  mu is "uniform" or "a=0.3,A=0.2,b=0.25,B=0.25"; NULL means
 * uniform.  The same seed gives the same word. */
CL_API cl_status cl_random_walk(int rank, const char* mu, int n, uint64_t seed, char** out);
CL_API cl_status cl_ball_sample(int rank, int n, uint64_t seed, char** out);
CL_API cl_status cl_drift(int rank, const char* mu, int n, int samples, uint64_t seed, int jobs, double* mean,
                          double* lo, double* hi);

/* Experiments.  Configuration keys are documented in the README; unknown
 * keys are rejected with CL_ERR_USAGE. */
CL_API cl_status cl_config_create(cl_config** out);
CL_API void cl_config_free(cl_config* c);
CL_API cl_status cl_config_set(cl_config* c, const char* key, const char* value);
/* Applies every "key = value" line of text; '#' starts a comment. */
CL_API cl_status cl_config_load(cl_config* c, const char* text);

CL_API cl_status cl_experiment_run(const cl_config* c, cl_table** out);
CL_API void cl_table_free(cl_table* t);
CL_API cl_status cl_table_csv(const cl_table* t, char** out);
CL_API cl_status cl_table_json(const cl_table* t, char** out);
CL_API cl_status cl_table_raw_csv(const cl_table* t, char** out);
CL_API cl_status cl_table_fit_power(const cl_table* t, double* slope, double* stderr_out);
CL_API cl_status cl_table_fit_log(const cl_table* t, double* slope, double* stderr_out);

/* Invariant suite.  report is called once per check, in order. */
typedef void (*cl_verify_report)(const char* name, int passed, const char* detail, void* user);
CL_API cl_status cl_verify(cl_verify_report report, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
