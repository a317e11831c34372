/* C interface to the coxgrowth library. Results cross the boundary as NUL-terminated UTF-8 JSON strings allocated by the library; free them with cox_string_free. */

#ifndef COXGROWTH_H
#define COXGROWTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum CoxStatus {
  COX_STATUS_OK = 0,
  /**
   * A pointer argument was null or otherwise unusable.
   */
  COX_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The diagram text failed to parse.
   */
  COX_STATUS_PARSE_ERROR = 2,
  /**
   * The diagram violates the Coxeter matrix invariants.
   */
  COX_STATUS_VALIDATION_ERROR = 3,
  /**
   * No catalog entry with the requested label.
   */
  COX_STATUS_UNKNOWN_LABEL = 4,
  /**
   * Root finding or another numeric step failed.
   */
  COX_STATUS_NUMERIC_ERROR = 5,
  /**
   * Argument text was not valid UTF-8.
   */
  COX_STATUS_UTF8_ERROR = 6,
  /**
   * Unexpected internal failure.
   */
  COX_STATUS_INTERNAL_ERROR = 7,
} CoxStatus;

/**
 * Opaque handle: a validated Coxeter diagram.
 */
typedef struct CoxDiagram CoxDiagram;

/**
 * Opaque handle: a computed growth series.
 */
typedef struct CoxGrowth CoxGrowth;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *cox_last_error_message(void);

/**
 * Parse a diagram in the line-oriented text format.
 *
 * # Safety
 * `text` must point to a NUL-terminated string; `out` must be a valid
 * pointer to receive the handle.
 */
enum CoxStatus cox_diagram_parse(const char *text, struct CoxDiagram **out);

/**
 * Load a bundled catalog diagram by label, e.g. "QL4_1".
 *
 * # Safety
 * `label` must point to a NUL-terminated string; `out` must be valid.
 */
enum CoxStatus cox_diagram_from_catalog(const char *label, struct CoxDiagram **out);

/**
 * Number of generators of the diagram; 0 for a null handle.
 *
 * # Safety
 * `diagram` must be a live handle from this library or null.
 */
uint32_t cox_diagram_rank(const struct CoxDiagram *diagram);

/**
 * Canonical text rendering of the diagram; free with cox_string_free.
 *
 * # Safety
 * `diagram` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_diagram_to_text(const struct CoxDiagram *diagram, char **out);

/**
 * Classification verdict as JSON:
 * `{"type", "components", "inf", "k", "branch"}`.
 *
 * # Safety
 * `diagram` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_classify_json(const struct CoxDiagram *diagram, char **out);

/**
 * Compute the Poincare series of the diagram.
 *
 * # Safety
 * `diagram` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_growth_compute(const struct CoxDiagram *diagram, struct CoxGrowth **out);

/**
 * Full growth result as JSON (reduced, virgin, and complete forms with
 * coefficients as decimal strings).
 *
 * # Safety
 * `growth` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_growth_json(const struct CoxGrowth *growth, char **out);

/**
 * First `len + 1` series coefficients as a JSON array of decimal strings.
 *
 * # Safety
 * `growth` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_growth_series_prefix_json(const struct CoxGrowth *growth,
                                             uint32_t len,
                                             char **out);

/**
 * Verification report (structural checks) as JSON.
 *
 * # Safety
 * `growth` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_verify_json(const struct CoxGrowth *growth, char **out);

/**
 * Pole report (real poles, annulus bounds, growth exponent) as JSON.
 *
 * # Safety
 * `growth` must be a live handle; `out` must be valid.
 */
enum CoxStatus cox_poles_json(const struct CoxGrowth *growth, double tol, char **out);

/**
 * Release a diagram handle. Null is a no-op.
 *
 * # Safety
 * `diagram` must be a handle from this library, not yet freed.
 */
void cox_diagram_free(struct CoxDiagram *diagram);

/**
 * Release a growth handle. Null is a no-op.
 *
 * # Safety
 * `growth` must be a handle from this library, not yet freed.
 */
void cox_growth_free(struct CoxGrowth *growth);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be a string allocated by this library, not yet freed.
 */
void cox_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXGROWTH_H */
