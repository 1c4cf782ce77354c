#ifndef DEA_H
#define DEA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DeaStatus {
  DEA_STATUS_OK = 0,
  DEA_STATUS_NULL_POINTER = 1,
  DEA_STATUS_INVALID_ARGUMENT = 2,
  DEA_STATUS_INVALID_DATASET = 3,
  DEA_STATUS_PARSE = 4,
  DEA_STATUS_IO = 5,
  /**
   * Oriented classification requested on data with negative values.
   */
  DEA_STATUS_UNSUPPORTED = 6,
  DEA_STATUS_SOLVER = 7,
  DEA_STATUS_PANIC = 8,
} DeaStatus;

typedef enum DeaMethod {
  /**
   * One dominance program per unit.
   */
  DEA_METHOD_UNIFIED = 0,
  /**
   * Radial passes for nonnegative data, the Pareto pass otherwise.
   */
  DEA_METHOD_SUPER_EFFICIENCY = 1,
} DeaMethod;

typedef enum DeaParetoLabel {
  DEA_PARETO_LABEL_E = 1,
  DEA_PARETO_LABEL_EPRIME = 2,
  DEA_PARETO_LABEL_WEP = 3,
  DEA_PARETO_LABEL_NEP = 4,
} DeaParetoLabel;

typedef enum DeaOrientedLabel {
  DEA_ORIENTED_LABEL_NOT_APPLICABLE = 0,
  DEA_ORIENTED_LABEL_E = 1,
  DEA_ORIENTED_LABEL_EPRIME = 2,
  DEA_ORIENTED_LABEL_WE = 3,
  DEA_ORIENTED_LABEL_NW = 4,
  DEA_ORIENTED_LABEL_NN = 5,
} DeaOrientedLabel;

/**
 * Opaque per-unit classification handle.
 */
typedef struct DeaClassification DeaClassification;

/**
 * Opaque dataset handle.
 */
typedef struct DeaDataset DeaDataset;

typedef struct DeaTolerance {
  double feas_tol;
  double pos_tol;
  double binary_threshold;
  size_t max_iterations;
} DeaTolerance;

typedef struct DeaUnifiedResult {
  bool feasible;
  size_t sum_t_minus;
  size_t sum_t_plus;
  /**
   * Total weight of the reference units; 0 when infeasible.
   */
  double sigma;
} DeaUnifiedResult;

typedef struct DeaUnitLabels {
  enum DeaParetoLabel pareto;
  enum DeaOrientedLabel input;
  enum DeaOrientedLabel output;
} DeaUnitLabels;

typedef struct DeaCrossValidation {
  size_t units;
  size_t agreed;
  bool oriented_compared;
  size_t unified_solves;
  size_t rdse_stage_one;
  size_t rdse_stage_two;
} DeaCrossValidation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *dea_last_error_message(void);

struct DeaTolerance dea_tolerance_default(void);

/**
 * Builds a dataset from row-major `n x m` inputs and `n x s` outputs.
 * Units are named `1..=n`.
 *
 * # Safety
 * `inputs` must point to `n * m` doubles, `outputs` to `n * s` doubles, and
 * `out` to writable storage for one handle.
 */
enum DeaStatus dea_dataset_new(size_t n,
                               size_t m,
                               size_t s,
                               const double *inputs,
                               const double *outputs,
                               struct DeaDataset **out);

/**
 * Loads a dataset from a CSV file with header `dmu,x1..xm,y1..ys`.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum DeaStatus dea_dataset_from_csv(const char *path, struct DeaDataset **out);

/**
 * # Safety
 * `ds` must be null or a handle from this library not yet freed.
 */
void dea_dataset_free(struct DeaDataset *ds);

/**
 * Writes the unit, input and output counts. Any out-pointer may be null.
 *
 * # Safety
 * `ds` must be a live handle.
 */
enum DeaStatus dea_dataset_shape(const struct DeaDataset *ds, size_t *n, size_t *m, size_t *s);

/**
 * Solves the dominance program for unit `unit` (0-based). When feasible and
 * non-null, `t_minus` receives `m` and `t_plus` receives `s` indicator values.
 * A null `tol` selects the defaults.
 *
 * # Safety
 * `ds` must be a live handle, `out` writable, and the optional buffers large
 * enough.
 */
enum DeaStatus dea_solve_unified(const struct DeaDataset *ds,
                                 size_t unit,
                                 const struct DeaTolerance *tol,
                                 struct DeaUnifiedResult *out,
                                 double *t_minus,
                                 double *t_plus);

/**
 * Classifies every unit with the chosen method.
 *
 * # Safety
 * `ds` must be a live handle and `out` writable.
 */
enum DeaStatus dea_classify(const struct DeaDataset *ds,
                            enum DeaMethod method,
                            const struct DeaTolerance *tol,
                            struct DeaClassification **out);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
size_t dea_classification_len(const struct DeaClassification *c);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum DeaStatus dea_classification_get(const struct DeaClassification *c,
                                      size_t index,
                                      struct DeaUnitLabels *out);

/**
 * LP solves performed, split into first-stage and slack-stage programs.
 *
 * # Safety
 * `c` must be a live handle; out-pointers may be null.
 */
enum DeaStatus dea_classification_solves(const struct DeaClassification *c,
                                         size_t *stage_one,
                                         size_t *stage_two);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void dea_classification_free(struct DeaClassification *c);

/**
 * Runs both routes and compares their labels.
 *
 * # Safety
 * `ds` must be a live handle and `out` writable.
 */
enum DeaStatus dea_cross_validate(const struct DeaDataset *ds,
                                  const struct DeaTolerance *tol,
                                  struct DeaCrossValidation *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEA_H */
