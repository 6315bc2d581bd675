/* C interface to the pliml library. Strings returned through char** must be
 * released with pliml_string_free; handles with their *_free function. On a
 * nonzero status, pliml_last_error() describes the failure (per thread). */
#ifndef PLIML_H
#define PLIML_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PLIML_API __declspec(dllexport)
#else
#define PLIML_API __attribute__((visibility("default")))
#endif

typedef enum pliml_status {
  PLIML_OK = 0,
  PLIML_INVALID_ARGUMENT = 1,
  PLIML_PARSE = 2,
  PLIML_DOMAIN = 3,
  PLIML_BUDGET_EXCEEDED = 4,
  PLIML_PRECONDITION = 5,
  PLIML_INVALID_ORBIT = 6,
  PLIML_IO = 7,
  PLIML_INTERNAL = 8
} pliml_status;

typedef struct pliml_map pliml_map;
typedef struct pliml_orbit pliml_orbit;

PLIML_API const char* pliml_version(void);
PLIML_API const char* pliml_status_name(pliml_status status);
PLIML_API const char* pliml_last_error(void);
PLIML_API void pliml_string_free(char* s);

/* Maps. `budget` caps breakpoints of composed maps; 0 means the default. */
PLIML_API pliml_status pliml_map_parse(const char* text, pliml_map** out);
PLIML_API pliml_status pliml_map_builtin(const char* name, pliml_map** out);
/* Newline-separated builtin names. */
PLIML_API pliml_status pliml_builtin_names(char** out);
PLIML_API void pliml_map_free(pliml_map* map);
PLIML_API pliml_status pliml_map_compose(const pliml_map* outer, const pliml_map* inner, size_t budget,
                                         pliml_map** out);
PLIML_API pliml_status pliml_map_iterate(const pliml_map* map, unsigned n, size_t budget, pliml_map** out);
PLIML_API pliml_status pliml_map_breakpoint_count(const pliml_map* map, size_t* out);
/* x and the result are rationals as text ("p/q"). */
PLIML_API pliml_status pliml_map_eval(const pliml_map* map, const char* x, char** out);
PLIML_API pliml_status pliml_map_to_text(const pliml_map* map, char** out);

typedef struct pliml_analyze_options {
  int non_strict;             /* nonzero: ties allowed in the zigzag extremum condition */
  size_t orbit_budget;        /* 0: default */
  const char* leo_epsilon;    /* NULL: skip leo_uniform_N */
} pliml_analyze_options;

/* JSON report. options may be NULL. */
PLIML_API pliml_status pliml_analyze(const pliml_map* map, const pliml_analyze_options* options, char** out);

typedef struct pliml_plot_options {
  unsigned width;      /* 0: 400 */
  unsigned height;     /* 0: 400 */
  const char* guides;  /* whitespace-separated rationals, or NULL */
  const char* marks;   /* whitespace-separated "x,y" pairs, or NULL */
  int diagonal;        /* nonzero: dashed y = x */
} pliml_plot_options;

PLIML_API pliml_status pliml_plot_svg(const pliml_map* map, const pliml_plot_options* options, char** out);
PLIML_API pliml_status pliml_plot_csv(const pliml_map* map, char** out);

/* Orbits: "const:q" or "prefix: ... ; period: ...". */
PLIML_API pliml_status pliml_orbit_parse(const char* text, pliml_orbit** out);
PLIML_API void pliml_orbit_free(pliml_orbit* orbit);

typedef struct pliml_certify_options {
  size_t stages;             /* 0: 10 */
  unsigned jobs;             /* 0: 1 */
  size_t breakpoint_budget;  /* 0: default */
} pliml_certify_options;

/* On PLIML_OK, *certificate holds the JSON certificate, *passed its verdict
 * and *summary (if non-NULL) a short human-readable account. */
PLIML_API pliml_status pliml_certify_minc(const pliml_orbit* orbit, const pliml_certify_options* options,
                                          char** certificate, int* passed, char** summary);
PLIML_API pliml_status pliml_certify_general(const pliml_map* map, const pliml_orbit* orbit,
                                             const pliml_certify_options* options, char** certificate, int* passed,
                                             char** summary);

/* Re-checks a JSON certificate. *problems lists inconsistencies, one per line. */
PLIML_API pliml_status pliml_certificate_verify(const char* certificate, int* consistent, int* passed,
                                                char** problems);

#ifdef __cplusplus
}
#endif

#endif
