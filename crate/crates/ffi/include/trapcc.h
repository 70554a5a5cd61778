#ifndef TRAPCC_H
#define TRAPCC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrapccStatus {
  TRAPCC_STATUS_OK = 0,
  TRAPCC_STATUS_NULL_POINTER = 1,
  TRAPCC_STATUS_INVALID_ARGUMENT = 2,
  // `(alpha, beta)` lies on the curve where the closed forms are singular.
  TRAPCC_STATUS_DEGENERATE = 3,
  // A mass is not positive where positive masses are required.
  TRAPCC_STATUS_UNPHYSICAL = 4,
  // The integration stopped at a close encounter; the handle is still valid.
  TRAPCC_STATUS_COLLISION = 5,
  TRAPCC_STATUS_OUT_OF_RANGE = 6,
  // An approximate boundary formula is not real at the requested point.
  TRAPCC_STATUS_DOMAIN_ERROR = 7,
  TRAPCC_STATUS_PANIC = 8,
} TrapccStatus;

typedef enum TrapccLabel {
  TRAPCC_LABEL_BOTH_POSITIVE = 0,
  TRAPCC_LABEL_ONLY_BASE_POSITIVE = 1,
  TRAPCC_LABEL_ONLY_TOP_POSITIVE = 2,
  TRAPCC_LABEL_NONE_POSITIVE = 3,
  TRAPCC_LABEL_DEGENERATE = 4,
} TrapccLabel;

typedef enum TrapccBoundaryFunction {
  TRAPCC_BOUNDARY_FUNCTION_F1 = 0,
  TRAPCC_BOUNDARY_FUNCTION_F3 = 1,
} TrapccBoundaryFunction;

typedef enum TrapccAxis {
  TRAPCC_AXIS_ALPHA = 0,
  TRAPCC_AXIS_BETA = 1,
} TrapccAxis;

// Opaque raster grid.
typedef struct TrapccRaster TrapccRaster;

// Opaque integrated trajectory.
typedef struct TrapccTrajectory TrapccTrajectory;

// Closed-form masses and the quantities they are built from.
typedef struct TrapccMasses {
  // Mass of each top body.
  double top_mass;
  // Mass of each base body.
  double base_mass;
  double lambda;
  double f1;
  double f2;
  double f3;
  double a;
  double b;
  double r_a;
  double r_b;
  int32_t label;
  // Horizontal force defect on the top pair; zero only where the masses
  // make the trapezoid central.
  double top_pair_defect;
} TrapccMasses;

typedef struct TrapccResidual {
  double lambda;
  double max_residual;
  double relative_residual;
  double potential;
  double moment;
} TrapccResidual;

typedef struct TrapccBoundary {
  // Nonzero when a root was bracketed; `root`, `f_value` and
  // `iterations` are then meaningful.
  int32_t found;
  double root;
  double f_value;
  uint32_t iterations;
  // Function values at the interval ends when no sign change was seen.
  double lo_value;
  double hi_value;
} TrapccBoundary;

// One raster cell. Masses are NaN on degenerate cells.
typedef struct TrapccCell {
  double alpha;
  double beta;
  double f1;
  double f3;
  double top_mass;
  double base_mass;
  int32_t label;
} TrapccCell;

typedef struct TrapccRigidity {
  double max_distance_deviation;
  double max_energy_drift;
  double max_angular_momentum_drift;
  double final_displacement;
  double final_time;
  // Nonzero when the run ended early at a close encounter.
  int32_t collided;
} TrapccRigidity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *trapcc_version(void);

// Message describing the last failure on this thread, or null if the last
// call succeeded. The pointer is valid until the next library call on the
// same thread.
const char *trapcc_last_error_message(void);

// Closed-form masses at `(alpha, beta)` with `lambda = 1`. Negative masses
// are reported, not rejected.
//
// # Safety
// `out` must be null or valid for writes.
enum TrapccStatus trapcc_solve_masses(double alpha, double beta, struct TrapccMasses *out);

// Masses from a direct 2x2 linear solve, independent of the closed forms.
//
// # Safety
// `top_mass` and `base_mass` must be null or valid for writes.
enum TrapccStatus trapcc_solve_masses_linear(double alpha,
                                             double beta,
                                             double *top_mass,
                                             double *base_mass);

// Region label at `(alpha, beta)`. Degenerate points yield
// `TRAPCC_LABEL_DEGENERATE` with status OK.
//
// # Safety
// `out` must be null or valid for writes.
enum TrapccStatus trapcc_classify(double alpha, double beta, enum TrapccLabel *out);

// Central-configuration residual of an arbitrary planar system at a given
// `lambda`.
//
// # Safety
// `masses` must hold `n` doubles, `xy` `2 n` interleaved coordinates and
// `out` must be valid for writes; null pointers are rejected.
enum TrapccStatus trapcc_cc_residual(size_t n,
                                     const double *masses,
                                     const double *xy,
                                     double lambda,
                                     struct TrapccResidual *out);

// Decides whether a planar system is central within relative tolerance
// `tol`, fitting `lambda = U / (2 I)`. Writes 1 or 0 to `is_central`.
//
// # Safety
// As for [`trapcc_cc_residual`]; `is_central` must be valid for writes and
// `out` may be null.
enum TrapccStatus trapcc_is_central(size_t n,
                                    const double *masses,
                                    const double *xy,
                                    double tol,
                                    int32_t *is_central,
                                    struct TrapccResidual *out);

// Bisects `f1` or `f3` along the free axis on `[lo, hi]` with the other
// parameter held at `fixed_value`.
//
// # Safety
// `out` must be null or valid for writes.
enum TrapccStatus trapcc_exact_boundary(enum TrapccBoundaryFunction which,
                                        enum TrapccAxis fixed_axis,
                                        double fixed_value,
                                        double lo,
                                        double hi,
                                        struct TrapccBoundary *out);

// Evaluates the approximate boundary formula `alpha = g(beta)` for `f1` or
// `f3` boundary. Returns `TRAPCC_STATUS_DOMAIN_ERROR` where it is not real.
//
// # Safety
// `out` must be null or valid for writes.
enum TrapccStatus trapcc_published_boundary(enum TrapccBoundaryFunction which,
                                            double beta,
                                            double *out);

// Samples cell centers of `[alpha_lo, alpha_hi] x [beta_lo, beta_hi]` on an
// `n_alpha x n_beta` grid.
//
// # Safety
// `out` must be null or valid for writes. The handle written there must be
// released with [`trapcc_raster_free`].
enum TrapccStatus trapcc_raster_new(double alpha_lo,
                                    double alpha_hi,
                                    size_t n_alpha,
                                    double beta_lo,
                                    double beta_hi,
                                    size_t n_beta,
                                    struct TrapccRaster **out);

// # Safety
// `raster` must be null or a live handle; the out-pointers must be null or
// valid for writes.
enum TrapccStatus trapcc_raster_dims(const struct TrapccRaster *raster,
                                     size_t *n_alpha,
                                     size_t *n_beta);

// # Safety
// `raster` must be null or a live handle; `out` must be null or valid for
// writes.
enum TrapccStatus trapcc_raster_cell(const struct TrapccRaster *raster,
                                     size_t alpha_index,
                                     size_t beta_index,
                                     struct TrapccCell *out);

// # Safety
// `raster` must be null or a handle from [`trapcc_raster_new`] that has not
// been freed.
void trapcc_raster_free(struct TrapccRaster *raster);

// Integrates the relative-equilibrium initial state at `(alpha, beta)` for
// `periods` periods of `2 pi` with fixed step `dt`, keeping every
// `stride`-th step. Configurations outside the positive-mass region are
// refused unless `allow_unphysical` is nonzero.
//
// A close encounter returns `TRAPCC_STATUS_COLLISION` and still writes a
// handle holding the partial trajectory.
//
// # Safety
// `out` must be null or valid for writes. The handle written there must be
// released with [`trapcc_trajectory_free`].
enum TrapccStatus trapcc_simulate(double alpha,
                                  double beta,
                                  double periods,
                                  double dt,
                                  size_t stride,
                                  int32_t allow_unphysical,
                                  struct TrapccTrajectory **out);

// Number of stored samples, or 0 for a null handle.
//
// # Safety
// `trajectory` must be null or a live handle.
size_t trapcc_trajectory_len(const struct TrapccTrajectory *trajectory);

// Number of bodies per sample, or 0 for a null handle.
//
// # Safety
// `trajectory` must be null or a live handle.
size_t trapcc_trajectory_bodies(const struct TrapccTrajectory *trajectory);

// Copies sample `index`: its time, `2 * bodies` interleaved positions into
// `xy` (capacity `xy_len`), energy and angular momentum. Any out-pointer
// other than `xy` may be null.
//
// # Safety
// `trajectory` must be null or a live handle; `xy` must be null or hold
// `xy_len` doubles; the scalar out-pointers must be null or valid.
enum TrapccStatus trapcc_trajectory_sample(const struct TrapccTrajectory *trajectory,
                                           size_t index,
                                           double *time,
                                           double *xy,
                                           size_t xy_len,
                                           double *energy,
                                           double *angular_momentum);

// Rigid-rotation diagnostics over the stored samples.
//
// # Safety
// `trajectory` must be null or a live handle; `out` must be null or valid.
enum TrapccStatus trapcc_trajectory_rigidity(const struct TrapccTrajectory *trajectory,
                                             struct TrapccRigidity *out);

// # Safety
// `trajectory` must be null or a handle from [`trapcc_simulate`] that has
// not been freed.
void trapcc_trajectory_free(struct TrapccTrajectory *trajectory);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRAPCC_H */
