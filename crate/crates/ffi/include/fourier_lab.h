#ifndef FOURIER_LAB_H
#define FOURIER_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Partial-sum route.
 */
typedef enum FlMethod {
  FL_METHOD_SERIES = 0,
  FL_METHOD_KERNEL_RAW = 1,
  FL_METHOD_KERNEL_SPLIT = 2,
  FL_METHOD_PERIODIC = 3,
} FlMethod;

typedef enum FlRangeKind {
  /**
   * `[0, a]` with `0 < a < π`
   */
  FL_RANGE_KIND_INTERIOR = 0,
  /**
   * `[0, π]`
   */
  FL_RANGE_KIND_FULL_PI = 1,
  /**
   * `[0, mπ]`
   */
  FL_RANGE_KIND_MULTI_PI = 2,
  /**
   * `[0, m]`, node-scaled kernel
   */
  FL_RANGE_KIND_UNIT_NODES = 3,
} FlRangeKind;

/**
 * Result code of every call.
 */
typedef enum FlStatus {
  FL_STATUS_OK = 0,
  FL_STATUS_NULL_POINTER = 1,
  FL_STATUS_INVALID_UTF8 = 2,
  FL_STATUS_SYNTAX = 3,
  FL_STATUS_ARGUMENT = 4,
  FL_STATUS_DOMAIN = 5,
  FL_STATUS_PRECONDITION = 6,
  /**
   * A quadrature missed its tolerance or met a non-finite value.
   */
  FL_STATUS_NUMERICAL = 7,
  FL_STATUS_PANIC = 8,
} FlStatus;

/**
 * Opaque table of Fourier coefficients.
 */
typedef struct FlCoefficients FlCoefficients;

/**
 * Opaque piecewise function.
 */
typedef struct FlFunction FlFunction;

typedef struct FlEstimate {
  double value;
  double error_estimate;
} FlEstimate;

/**
 * Integration range for the Dirichlet integrals. `a` is read for
 * `Interior`, `m` for `MultiPi` and `UnitNodes`.
 */
typedef struct FlRange {
  enum FlRangeKind kind;
  double a;
  uint32_t m;
} FlRange;

typedef struct FlLimit {
  double estimate;
  double spread;
  double predicted;
} FlLimit;

typedef struct FlPoisson {
  double lhs;
  double rhs;
  double residual;
  double last_mode;
  double quadrature_error;
  uint32_t modes_used;
} FlPoisson;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *fl_last_error_message(void);

/**
 * Parses a function spec such as `"[0,1pi): 1 ; [1pi,2pi]: 0"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum FlStatus fl_function_parse(const char *spec, struct FlFunction **out);

/**
 * # Safety
 * `f` must come from [`fl_function_parse`] and not be used afterwards.
 * Null is ignored.
 */
void fl_function_free(struct FlFunction *f);

/**
 * Canonical text of `f`; release it with [`fl_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_function_format(const struct FlFunction *f, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void fl_string_free(char *s);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_function_eval(const struct FlFunction *f, double x, double *out);

/**
 * # Safety
 * `f` must be a live handle; `lo` and `hi` writable.
 */
enum FlStatus fl_function_domain(const struct FlFunction *f, double *lo, double *hi);

/**
 * `a_k`, `b_k` for `k ≤ k_max` by quadrature (`closed_form == false`) or
 * from antiderivatives.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_coefficients_new(const struct FlFunction *f,
                                  size_t k_max,
                                  double tol,
                                  bool closed_form,
                                  struct FlCoefficients **out);

/**
 * # Safety
 * `c` must come from [`fl_coefficients_new`] and not be used afterwards.
 * Null is ignored.
 */
void fl_coefficients_free(struct FlCoefficients *c);

/**
 * Highest stored index; zero for a null handle.
 *
 * # Safety
 * `c` must be a live handle or null.
 */
size_t fl_coefficients_order(const struct FlCoefficients *c);

/**
 * `a_k` and `b_k`; `b_0` is reported as zero.
 *
 * # Safety
 * `c` must be a live handle; `a` and `b` writable.
 */
enum FlStatus fl_coefficients_get(const struct FlCoefficients *c, size_t k, double *a, double *b);

/**
 * `s_n(x)`. The split route at `x = 0` or `x = 2π` uses the endpoint form.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_partial_sum(const struct FlFunction *f,
                             enum FlMethod method,
                             uint32_t n,
                             double x,
                             double tol,
                             struct FlEstimate *out);

/**
 * `∫ f(x) sin((2N+1)x)/sin x dx` over `range_spec`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_dirichlet_integral(const struct FlFunction *f,
                                    struct FlRange range_spec,
                                    uint32_t big_n,
                                    double tol,
                                    struct FlEstimate *out);

/**
 * Window mean of the Dirichlet integral over `N = n_start .. n_start + window − 1`
 * together with its predicted limit.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_dirichlet_limit(const struct FlFunction *f,
                                 struct FlRange range_spec,
                                 uint32_t n_start,
                                 size_t window,
                                 double tol,
                                 struct FlLimit *out);

/**
 * Finite Poisson summation on `[0, m]` with `modes` cosine modes.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_poisson_finite(const struct FlFunction *f,
                                uint32_t m,
                                uint32_t modes,
                                double tol,
                                struct FlPoisson *out);

/**
 * Infinite Poisson summation with every integral cut at `x_cut`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FlStatus fl_poisson_infinite(const struct FlFunction *f,
                                  uint32_t modes,
                                  double x_cut,
                                  double tol,
                                  struct FlPoisson *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOURIER_LAB_H */
