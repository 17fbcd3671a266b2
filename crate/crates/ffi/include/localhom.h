#ifndef LOCALHOM_H
#define LOCALHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LhStatus {
  LH_STATUS_OK = 0,
  LH_STATUS_NULL_POINTER = 1,
  LH_STATUS_INVALID_ARGUMENT = 2,
  LH_STATUS_MALFORMED_INPUT = 3,
  LH_STATUS_STRUCTURAL = 4,
  /**
   * The requested scale is not below the ball radius.
   */
  LH_STATUS_GUARANTEE_LAPSED = 5,
  LH_STATUS_PARSE = 6,
  LH_STATUS_IO = 7,
  /**
   * A bug inside the library; the call had no effect.
   */
  LH_STATUS_PANIC = 8,
} LhStatus;

/**
 * Opaque persistence diagram.
 */
typedef struct LhDiagram LhDiagram;

/**
 * Opaque point cloud.
 */
typedef struct LhPointCloud LhPointCloud;

/**
 * Parameters of a local query. `basepoint` points to `basepoint_len`
 * coordinates.
 */
typedef struct LhQuery {
  const double *basepoint;
  size_t basepoint_len;
  double radius;
  double epsilon;
  double max_scale;
  size_t max_dim;
} LhQuery;

/**
 * One diagram point; `death` is `INFINITY` for essential classes.
 */
typedef struct LhDiagramPoint {
  uint32_t dim;
  double birth;
  double death;
} LhDiagramPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *lh_last_error_message(void);

/**
 * Builds a cloud from `n_points * dim` row-major coordinates.
 *
 * # Safety
 * `coords` must point to `n_points * dim` readable doubles (it may be null
 * when that product is zero) and `out` must be writable.
 */
enum LhStatus lh_cloud_new(const double *coords,
                           size_t n_points,
                           size_t dim,
                           struct LhPointCloud **out);

/**
 * Reads a point-cloud file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` must be writable.
 */
enum LhStatus lh_cloud_read(const char *path, struct LhPointCloud **out);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `cloud` must be null or a live handle.
 */
size_t lh_cloud_len(const struct LhPointCloud *cloud);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `cloud` must be null or a live handle.
 */
size_t lh_cloud_dim(const struct LhPointCloud *cloud);

/**
 * # Safety
 * `cloud` must be null or a handle not freed before.
 */
void lh_cloud_free(struct LhPointCloud *cloud);

/**
 * Relative diagram of the Rips pair at the query's basepoint. The certified
 * bound is written to `out_bound` unless it is null.
 *
 * # Safety
 * `cloud` and `query` must be valid, `query->basepoint` must point to
 * `basepoint_len` doubles and `out_diagram` must be writable.
 */
enum LhStatus lh_alpha_pipeline(const struct LhPointCloud *cloud,
                                const struct LhQuery *query,
                                struct LhDiagram **out_diagram,
                                double *out_bound);

/**
 * Sublevel diagram of the negated distance to the basepoint. Only the
 * basepoint, `epsilon` and `max_dim` of the query are used, but the other
 * fields must still be positive.
 *
 * # Safety
 * Same as [`lh_alpha_pipeline`].
 */
enum LhStatus lh_r_pipeline(const struct LhPointCloud *cloud,
                            const struct LhQuery *query,
                            struct LhDiagram **out_diagram,
                            double *out_bound);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `diagram` must be null or a live handle.
 */
size_t lh_diagram_len(const struct LhDiagram *diagram);

/**
 * Copies point `index` into `out`. Points are sorted by dimension, birth
 * and death.
 *
 * # Safety
 * `diagram` must be a live handle and `out` writable.
 */
enum LhStatus lh_diagram_point(const struct LhDiagram *diagram,
                               size_t index,
                               struct LhDiagramPoint *out);

/**
 * Reads a diagram file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` must be writable.
 */
enum LhStatus lh_diagram_read(const char *path, struct LhDiagram **out);

/**
 * Writes a diagram file.
 *
 * # Safety
 * `diagram` must be a live handle and `path` a NUL-terminated string.
 */
enum LhStatus lh_diagram_write(const struct LhDiagram *diagram, const char *path);

/**
 * # Safety
 * `diagram` must be null or a handle not freed before.
 */
void lh_diagram_free(struct LhDiagram *diagram);

/**
 * Bottleneck distance; `INFINITY` when the essential classes cannot be
 * matched.
 *
 * # Safety
 * Both diagrams must be live handles and `out` writable.
 */
enum LhStatus lh_bottleneck(const struct LhDiagram *a, const struct LhDiagram *b, double *out);

/**
 * `2*epsilon + alpha + alpha^2/r`; fails with `GuaranteeLapsed` when
 * `alpha >= r`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LhStatus lh_certified_bound_alpha(double epsilon, double alpha, double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOCALHOM_H */
