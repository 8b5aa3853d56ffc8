#ifndef EULER_PROFILE_H
#define EULER_PROFILE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every function.
typedef enum EpStatus {
  EP_STATUS_OK = 0,
  EP_STATUS_INVALID_ARGUMENT = 1,
  EP_STATUS_DOMAIN = 2,
  EP_STATUS_REGIME = 3,
  EP_STATUS_NOT_APPLICABLE = 4,
  EP_STATUS_NULL_POINTER = 5,
  EP_STATUS_BUFFER_TOO_SMALL = 6,
  EP_STATUS_INTERNAL = 7,
} EpStatus;

// Solution regime of an instance.
typedef enum EpRegime {
  EP_REGIME_UNIQUE_CONVEX = 0,
  EP_REGIME_DEGENERATE_AFFINE = 1,
  EP_REGIME_NONUNIQUE_BAND = 2,
  EP_REGIME_DEGENERATE_AFFINE_REFLECTED = 3,
  EP_REGIME_UNIQUE_CONCAVE_REFLECTED = 4,
} EpRegime;

// Opaque handle to a solved profile.
typedef struct EpProfile EpProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Resistance of a polyline given as `n_vertices` interleaved `x, y` pairs.
//
// # Safety
// `xy` must point to `2 * n_vertices` readable doubles and `out_value` must be
// writable.
enum EpStatus ep_resistance(const double *xy, size_t n_vertices, double *out_value);

// Area between a polyline and the bottom edge of the `a × h` box.
//
// # Safety
// As for [`ep_resistance`].
enum EpStatus ep_area_below(const double *xy,
                            size_t n_vertices,
                            double a,
                            double h,
                            double *out_value);

// Regime of the instance `(a, h, L)`.
//
// # Safety
// `out_regime` must be writable.
enum EpStatus ep_classify(double a, double h, double l, enum EpRegime *out_regime);

// Minimal resistance and regime, without sampling a curve.
//
// # Safety
// `out_value` must be writable; `out_regime` may be null.
enum EpStatus ep_fmin(double a, double h, double l, double *out_value, enum EpRegime *out_regime);

// Solves `(a, h, L)` with the convex arc sampled at `samples` points.
// The handle must be released with [`ep_profile_free`].
//
// # Safety
// `out_profile` must be writable.
enum EpStatus ep_profile_solve(double a,
                               double h,
                               double l,
                               size_t samples,
                               struct EpProfile **out_profile);

// Releases a handle from [`ep_profile_solve`]. Null is ignored.
//
// # Safety
// `profile` must be null or a live handle, and is invalid afterwards.
void ep_profile_free(struct EpProfile *profile);

// # Safety
// `profile` must be a live handle and `out_value` writable.
enum EpStatus ep_profile_f_min(const struct EpProfile *profile, double *out_value);

// # Safety
// `profile` must be a live handle and `out_value` writable.
enum EpStatus ep_profile_h_star(const struct EpProfile *profile, double *out_value);

// # Safety
// `profile` must be a live handle and `out_regime` writable.
enum EpStatus ep_profile_regime(const struct EpProfile *profile, enum EpRegime *out_regime);

// Endpoint slopes `ξ*, η*`. Not applicable in the band regime.
//
// # Safety
// `profile` must be a live handle; both outputs writable.
enum EpStatus ep_profile_xi_eta(const struct EpProfile *profile, double *out_xi, double *out_eta);

// # Safety
// `profile` must be a live handle and `out_count` writable.
enum EpStatus ep_profile_vertex_count(const struct EpProfile *profile, size_t *out_count);

// Copies the vertices as interleaved `x, y` pairs into `buf`, which holds
// `capacity` vertices. Fails with `BUFFER_TOO_SMALL` without writing if the
// curve does not fit.
//
// # Safety
// `profile` must be a live handle and `buf` must hold `2 * capacity`
// writable doubles.
enum EpStatus ep_profile_copy_vertices(const struct EpProfile *profile,
                                       double *buf,
                                       size_t capacity);

// Euler–Lagrange residual of the profile; also stores the fitted
// multipliers in the handle. Not applicable in the band regime.
//
// # Safety
// `profile` must be a live handle not used concurrently, and `out_value`
// writable.
enum EpStatus ep_profile_el_residual(struct EpProfile *profile, double *out_value);

// Multipliers `λ̄, μ̄` of the profile. Not applicable in the band regime.
//
// # Safety
// `profile` must be a live handle; both outputs writable.
enum EpStatus ep_profile_multipliers(const struct EpProfile *profile,
                                     double *out_lambda,
                                     double *out_mu);

// Minimizes the relaxed energy on `n` cells. If `u` is not null it receives
// the `n + 1` grid values and must hold that many doubles.
//
// # Safety
// `out_value` must be writable; `out_converged` may be null; `u` must be
// null or hold `n + 1` writable doubles.
enum EpStatus ep_relaxed_min(double a,
                             double h,
                             double l,
                             size_t n,
                             double tol,
                             double *out_value,
                             bool *out_converged,
                             double *u);

// Message of the last failure on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *ep_last_error(void);

// Library version as a static NUL-terminated string.
const char *ep_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULER_PROFILE_H */
