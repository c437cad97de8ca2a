/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef LAPLACE_H
#define LAPLACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  LAP_STATUS_OK = 0,
  LAP_STATUS_NULL_POINTER = 1,
  LAP_STATUS_INVALID_UTF8 = 2,
  LAP_STATUS_PARSE_ERROR = 3,
  LAP_STATUS_VALIDATION_FAILED = 4,
  /**
   * Singular truncated operator on a ball that exhausts a finite graph.
   */
  LAP_STATUS_SINGULAR_FINITE = 5,
  /**
   * Singular truncated operator on an unsaturated ball.
   */
  LAP_STATUS_SINGULAR_ANOMALY = 6,
  LAP_STATUS_NOT_STABILIZED = 7,
  LAP_STATUS_SOLVER_ERROR = 8,
  LAP_STATUS_INTERNAL = 9,
} LapStatus;

/**
 * Opaque graph handle.
 */
typedef struct LapGraph LapGraph;

/**
 * Opaque solve result.
 */
typedef struct LapReport LapReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * call into this library on the same thread; never null.
 */
const char *lap_last_error(void);

/**
 * Creates a graph from a family shorthand (`"z"`, `"tree3"`, …) or a JSON
 * description.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid pointer.
 */
LapStatus lap_graph_new(const char *spec, LapGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from [`lap_graph_new`] not yet freed.
 */
void lap_graph_free(LapGraph *graph);

/**
 * `|B_n|`.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
LapStatus lap_graph_ball_size(const LapGraph *graph, size_t n, size_t *out);

/**
 * Ball solve at radius `n`. `target` and `lambda` use the CLI text forms
 * (`"delta"`, JSON, `"0"`, `"distance"`, `"p/q"`).
 *
 * # Safety
 * Pointers must be valid; `out` receives a handle to free with [`lap_report_free`].
 */
LapStatus lap_solve_on_ball(const LapGraph *graph,
                            const char *target,
                            size_t n,
                            const char *lambda,
                            LapReport **out);

/**
 * Coherent solution `x_0, …, x_depth`; the report holds `x_depth` on
 * `B_{depth+1}` and the full family in its JSON.
 *
 * # Safety
 * Pointers must be valid; `out` receives a handle to free with [`lap_report_free`].
 */
LapStatus lap_coherent_solution(const LapGraph *graph,
                                const char *target,
                                size_t depth,
                                size_t max_m,
                                size_t window,
                                const char *lambda,
                                LapReport **out);

/**
 * Maximum-principle certificate at radius `n`. `determinant` receives an
 * owned `"p/q"` string.
 *
 * # Safety
 * Pointers must be valid.
 */
LapStatus lap_certificate(const LapGraph *graph,
                          size_t n,
                          const char *lambda,
                          bool *strict_inclusion,
                          char **determinant);

/**
 * # Safety
 * `report` must be a live handle.
 */
bool lap_report_residual_zero(const LapReport *report);

/**
 * Number of vertices in the solution's ball.
 *
 * # Safety
 * `report` must be a live handle.
 */
size_t lap_report_len(const LapReport *report);

/**
 * Borrowed label of vertex `i`; null when out of range. Valid while the report lives.
 *
 * # Safety
 * `report` must be a live handle.
 */
const char *lap_report_label(const LapReport *report, size_t i);

/**
 * Borrowed `"p/q"` value at vertex `i`; null when out of range.
 *
 * # Safety
 * `report` must be a live handle.
 */
const char *lap_report_value(const LapReport *report, size_t i);

/**
 * Borrowed JSON report.
 *
 * # Safety
 * `report` must be a live handle.
 */
const char *lap_report_json(const LapReport *report);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void lap_report_free(LapReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void lap_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAPLACE_H */
