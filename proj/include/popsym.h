/* popsym — symmetry-analysis toolkit for the degenerate porous-media
 * population equation
 *     phi_t = (phi^2)_xx + (phi^2)_yy - h phi^theta,  0 < theta < 1, h >= 0.
 *
 * C interface over the symbolic kernel, the five-generator symmetry algebra,
 * the optimal-system classifier, the closed-form solution verifier, the
 * conservation-law machinery and the finite-difference cross-checker.
 *
 * Conventions:
 *  - every function returns a popsym_status; details for non-OK statuses are
 *    available from popsym_last_error() (thread-local)
 *  - strings returned through char** are heap-allocated; release them with
 *    popsym_string_free
 *  - expressions are opaque handles released with popsym_expr_free
 *  - rational arguments (theta, alpha) are strings such as "1/2" or "0.5"
 *    and are parsed exactly
 */
#ifndef POPSYM_H
#define POPSYM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  POPSYM_OK = 0,
  POPSYM_ERR_PARSE = 1,
  POPSYM_ERR_DOMAIN = 2,
  POPSYM_ERR_EVAL = 3,
  POPSYM_ERR_JET_ORDER = 4,
  POPSYM_ERR_INVALID_ARGUMENT = 5,
  POPSYM_ERR_IO = 6,
  POPSYM_ERR_INTERNAL = 7
} popsym_status;

typedef struct popsym_expr popsym_expr;

/* last error message for the calling thread; never NULL */
const char* popsym_last_error(void);

void popsym_string_free(char* s);
void popsym_expr_free(popsym_expr* e);

/* ---- expression kernel ------------------------------------------------- */

/* grammar: infix + - * / ^ with exp, ln, sin, cos, pow(a,b); jet variables
 * phi, phi_x, phi_xy, ...; psi likewise; free identifiers are parameters */
popsym_status popsym_parse(const char* text, popsym_expr** out);
popsym_status popsym_print(const popsym_expr* e, char** out);
popsym_status popsym_expr_clone(const popsym_expr* e, popsym_expr** out);

/* the documented grammar, EBNF rendering */
popsym_status popsym_grammar(char** out);

/* wrt: "x", "y", "t", a jet name, "theta", or a parameter name */
popsym_status popsym_differentiate(const popsym_expr* e, const char* wrt, popsym_expr** out);
/* base: "x", "y" or "t" */
popsym_status popsym_total_derivative(const popsym_expr* e, const char* base,
                                      popsym_expr** out);
/* target: atom name as accepted by popsym_differentiate (except "theta") */
popsym_status popsym_substitute(const popsym_expr* e, const char* target,
                                const popsym_expr* replacement, popsym_expr** out);

/* verdict: 0 = Zero, 1 = NonZero, 2 = Unknown */
popsym_status popsym_is_zero(const popsym_expr* e, unsigned long long seed, int* verdict);

/* numeric evaluation at a point; theta is a rational string and is also
 * bound to the identifier "theta"; names/values bind the remaining atoms */
popsym_status popsym_eval(const popsym_expr* e, const char* theta, const char* const* names,
                          const double* values, size_t n, double* out);

/* ---- verification surface ---------------------------------------------- */

/* which: "commutation", "adjoint" or "invariants"; format: "text", "csv" or
 * "json". With check != 0 the computed table is compared against the
 * embedded transcription; *ok is 1 on full agreement. */
popsym_status popsym_tables(const char* which, const char* format, int check, char** rendered,
                            int* ok);

/* scope: "symmetries", "solutions", "adjoint", "conservation" or "all";
 * h: NULL for symbolic, else a numeric string such as "0";
 * expectations: NULL for the embedded list, else a file of check names whose
 * documented-discrepancy verdicts are expected; *ok is 1 when nothing failed */
popsym_status popsym_verify(const char* scope, const char* format, const char* h,
                            const char* theta, unsigned long long seed,
                            const char* expectations, char** rendered, int* ok);

/* alpha: five rational strings; *ok reflects the adjoint-matrix replay when
 * verify != 0, else 1 */
popsym_status popsym_classify(const char* const alpha[5], const char* theta, int verify,
                              const char* format, char** rendered, int* ok);

/* family: "S2", "S3" or "S4" (others are rejected as inadmissible) */
popsym_status popsym_simulate(const char* family, const char* theta, double h, int steps,
                              int dt_sweep, const char* outdir, const char* format,
                              char** rendered, int* ok);

/* figure: "F1".."F6"; writes the per-panel CSV files into outdir */
popsym_status popsym_export_figure(const char* figure, const char* outdir, const char* format,
                                   char** rendered, int* ok);

#ifdef __cplusplus
}
#endif

#endif /* POPSYM_H */
