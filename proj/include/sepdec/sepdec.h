/* sepdec -- separability certificates for shifted-diagonal bipartite mixed
 * states. C interface to the shared library: opaque handles, status codes,
 * JSON strings for structured data. All strings returned through char**
 * out-parameters are heap-allocated and must be released with
 * sepdec_string_free(); handles with the matching *_free() call.
 */
#ifndef SEPDEC_H
#define SEPDEC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sepdec_status {
  SEPDEC_OK = 0,
  SEPDEC_ERR_BAD_SHAPE = 1,
  SEPDEC_ERR_ZERO_ENTRY = 2,
  SEPDEC_ERR_BAD_TRACE = 3,
  SEPDEC_ERR_PARSE = 4,
  SEPDEC_ERR_NOT_PPT = 5,
  SEPDEC_ERR_INCONSISTENT_THETA = 6,
  SEPDEC_ERR_SUM_DEFECT = 7,
  SEPDEC_ERR_BAD_S = 8,
  SEPDEC_ERR_MIX_IDENTITY = 9,
  SEPDEC_ERR_RANK_ONE = 10,
  SEPDEC_ERR_EIGENSOLVER = 11,
  SEPDEC_ERR_DEGENERATE_DRAW = 12,
  SEPDEC_ERR_BAD_ARGUMENT = 13,
  SEPDEC_ERR_INTERNAL = 14
} sepdec_status;

typedef struct sepdec_tolerances {
  double zero_threshold; /* default 1e-12 */
  double residual_tol;   /* default 1e-9 */
  double psd_tol;        /* default 1e-10 */
} sepdec_tolerances;

/* Combined verdict of the structural and the spectral PPT tests. borderline
 * is set when the instance falls inside the declared agreement band
 * (|min eigenvalue| <= 1e-7, or structural residual in (1e-11, 1e-7)), where
 * the two tests are allowed to disagree. */
typedef struct sepdec_verdict {
  int structural_is_ppt;
  int spectral_is_ppt;
  double max_minor_residual;
  double min_eigenvalue;
  int borderline;
  int agree;
} sepdec_verdict;

typedef struct sepdec_instance sepdec_instance;
typedef struct sepdec_decomposition sepdec_decomposition;

const char *sepdec_version(void);
const char *sepdec_status_name(sepdec_status status);
/* Thread-local detail message for the last failing call on this thread. */
const char *sepdec_last_error(void);

void sepdec_tolerances_default(sepdec_tolerances *tol);

void sepdec_string_free(char *text);
void sepdec_instance_free(sepdec_instance *inst);
void sepdec_decomposition_free(sepdec_decomposition *dec);

/* kind is one of "uniform", "ppt", "perturbed", "random"; epsilon applies to
 * "perturbed" only; label may be NULL; tol NULL means defaults. */
sepdec_status sepdec_generate(int n, const char *kind, uint64_t seed,
                              double epsilon, const char *label,
                              const sepdec_tolerances *tol,
                              sepdec_instance **out);
sepdec_status sepdec_instance_from_json(const char *json,
                                        const sepdec_tolerances *tol,
                                        sepdec_instance **out);
sepdec_status sepdec_instance_to_json(const sepdec_instance *inst,
                                      char **json_out);
/* Local dimension n, or -1 on a NULL handle. */
int sepdec_instance_dim(const sepdec_instance *inst);

/* Verdict out-parameters may be NULL; report_json may be NULL to skip
 * building the JSON report. */
sepdec_status sepdec_check_structural(const sepdec_instance *inst, int *is_ppt,
                                      char **report_json);
sepdec_status sepdec_check_spectral(const sepdec_instance *inst, int *is_ppt,
                                    char **report_json);
sepdec_status sepdec_check_both(const sepdec_instance *inst,
                                sepdec_verdict *verdict, char **report_json);

sepdec_status sepdec_decompose(const sepdec_instance *inst,
                               double free_constant,
                               sepdec_decomposition **out);
sepdec_status sepdec_decomposition_to_json(const sepdec_decomposition *dec,
                                           char **json_out);
sepdec_status sepdec_decomposition_from_json(const char *json,
                                             sepdec_decomposition **out);
sepdec_status sepdec_verify(const sepdec_instance *inst,
                            const sepdec_decomposition *dec, int *pass,
                            char **report_json);

#ifdef __cplusplus
}
#endif

#endif /* SEPDEC_H */
