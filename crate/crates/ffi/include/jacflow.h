#ifndef JACFLOW_H
#define JACFLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum JfStatus {
  JF_STATUS_OK = 0,
  JF_STATUS_NULL_POINTER = 1,
  /**
   * Lengths disagree or are odd/zero.
   */
  JF_STATUS_DIMENSION_MISMATCH = 2,
  JF_STATUS_INVALID_ARGUMENT = 3,
  JF_STATUS_PARSE = 4,
  /**
   * A class of content > 1 where a primitive one is required.
   */
  JF_STATUS_NON_PRIMITIVE = 5,
  /**
   * The zero class where a nonzero one is required.
   */
  JF_STATUS_SEPARATING_CLASS = 6,
  JF_STATUS_COINCIDENT_BRANCH_POINTS = 7,
  JF_STATUS_CONVERGENCE_FAILURE = 8,
  /**
   * Degenerate, ill-conditioned or singular period data.
   */
  JF_STATUS_DEGENERATE = 9,
  JF_STATUS_OVERFLOW = 10,
  JF_STATUS_INTERNAL = 11,
} JfStatus;

/**
 * An opaque hyperelliptic curve y² = f(x).
 */
typedef struct JfCurve JfCurve;

/**
 * An opaque period lattice Λ ⊂ ℂ^g.
 */
typedef struct JfLattice JfLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *jf_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *jf_status_message(enum JfStatus status);

/**
 * Curve from `n` branch points given as 2n interleaved doubles.
 *
 * # Safety
 * `points` must hold 2n readable doubles; `out` must be writable.
 */
enum JfStatus jf_curve_from_branch_points(const double *points, size_t n, struct JfCurve **out);

/**
 * Curve from the JSON curve description accepted by the CLI.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JfStatus jf_curve_from_json(const char *json, struct JfCurve **out);

/**
 * Genus of the curve, or 0 for NULL.
 *
 * # Safety
 * `curve` must be NULL or a live handle.
 */
size_t jf_curve_genus(const struct JfCurve *curve);

/**
 * # Safety
 * `curve` must be NULL or a handle not yet freed.
 */
void jf_curve_free(struct JfCurve *curve);

/**
 * Period lattice of `curve` over the standard contours. `tolerance <= 0`
 * selects the default quadrature tolerance.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum JfStatus jf_lattice_from_curve(const struct JfCurve *curve,
                                    double tolerance,
                                    struct JfLattice **out);

/**
 * Lattice from 2g generators in ℂ^g: generator k occupies doubles
 * [2g·k, 2g·(k+1)), interleaved.
 *
 * # Safety
 * `generators` must hold 4g² readable doubles; `out` must be writable.
 */
enum JfStatus jf_lattice_from_generators(const double *generators,
                                         size_t genus,
                                         struct JfLattice **out);

/**
 * Genus of the lattice, or 0 for NULL.
 *
 * # Safety
 * `lattice` must be NULL or a live handle.
 */
size_t jf_lattice_genus(const struct JfLattice *lattice);

/**
 * # Safety
 * `lattice` must be NULL or a handle not yet freed.
 */
void jf_lattice_free(struct JfLattice *lattice);

/**
 * τ = A⁻¹B (g×g row-major, interleaved) with its symmetry defect and the
 * smallest eigenvalue of Im τ.
 *
 * # Safety
 * `tau` must hold 2g² writable doubles; the scalar outputs must be writable.
 */
enum JfStatus jf_riemann_relations(const struct JfLattice *lattice,
                                   double *tau,
                                   double *symmetry_defect,
                                   double *min_imag_eigenvalue);

/**
 * ⟨a, b⟩ for classes of length `len`.
 *
 * # Safety
 * `a` and `b` must hold `len` readable integers; `out` must be writable.
 */
enum JfStatus jf_intersection(const int64_t *a, const int64_t *b, size_t len, int64_t *out);

/**
 * Symplectic M with M·e₂ = c, written row-major into `len × len` integers.
 *
 * # Safety
 * `c` must hold `len` readable integers; `matrix` `len²` writable ones.
 */
enum JfStatus jf_complete_basis(const int64_t *c, size_t len, int64_t *matrix);

/**
 * Ξ_s of class c at holonomy point θ; all arrays have length `len` = 2g.
 *
 * # Safety
 * `theta` and `c` must hold `len` readable values; `out` `len` writable doubles.
 */
enum JfStatus jf_flow_holonomy(const double *theta,
                               const int64_t *c,
                               size_t len,
                               double s,
                               double *out);

/**
 * Ξ_s on ℂ^g/Λ: `z` and `out` are g interleaved complex numbers, `c` has 2g entries.
 *
 * # Safety
 * `z` must hold 2g readable doubles, `c` 2g integers, `out` 2g writable doubles.
 */
enum JfStatus jf_flow_jacobian(const struct JfLattice *lattice,
                               const double *z,
                               const int64_t *c,
                               double s,
                               double *out);

/**
 * v ∈ [0,1)^{2g} to z ∈ ℂ^g (interleaved).
 *
 * # Safety
 * `v` must hold 2g readable doubles and `z` 2g writable ones.
 */
enum JfStatus jf_v_to_z(const struct JfLattice *lattice, const double *v, double *z);

/**
 * z ∈ ℂ^g (interleaved) to v ∈ [0,1)^{2g}.
 *
 * # Safety
 * `z` must hold 2g readable doubles and `v` 2g writable ones.
 */
enum JfStatus jf_z_to_v(const struct JfLattice *lattice, const double *z, double *v);

/**
 * Torus distance between the two routes around the holonomy/lattice square.
 *
 * # Safety
 * `theta` and `c` must hold 2g readable values; `defect` must be writable.
 */
enum JfStatus jf_flows_commute_check(const struct JfLattice *lattice,
                                     const double *theta,
                                     const int64_t *c,
                                     double s,
                                     double *defect);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACFLOW_H */
