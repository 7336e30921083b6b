#ifndef AQV_H
#define AQV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AqvStatus {
  AQV_STATUS_OK = 0,
  AQV_STATUS_NULL_POINTER = 1,
  AQV_STATUS_INVALID_INPUT = 2,
  AQV_STATUS_UNPHYSICAL = 3,
  AQV_STATUS_NUMERICAL_FAILURE = 4,
  AQV_STATUS_IO = 5,
  AQV_STATUS_PARSE = 6,
  AQV_STATUS_OUT_OF_RANGE = 7,
  AQV_STATUS_PANIC = 8,
} AqvStatus;

typedef enum AqvTaper {
  AQV_TAPER_LINEAR = 0,
  AQV_TAPER_HOLD = 1,
} AqvTaper;

typedef enum AqvDesignKind {
  AQV_DESIGN_KIND_RESONANT = 0,
  AQV_DESIGN_KIND_GEOMETRIC = 1,
} AqvDesignKind;

/**
 * Opaque antenna layout.
 */
typedef struct AqvLayout AqvLayout;

/**
 * Opaque reflectance profile.
 */
typedef struct AqvProfile AqvProfile;

typedef struct AqvDecayCoefficients {
  double gamma1;
  double gamma2;
  double kappa12_re;
  double kappa12_im;
  double omega0;
} AqvDecayCoefficients;

/**
 * Independent entries of the Hermitian 3×3 density matrix.
 */
typedef struct AqvDensityMatrix {
  double rho00;
  double rho11;
  double rho22;
  double rho12_re;
  double rho12_im;
  double rho10_re;
  double rho10_im;
  double rho20_re;
  double rho20_im;
} AqvDensityMatrix;

typedef struct AqvEstimate {
  double na;
  double gamma_x_ratio;
  double gamma_y_ratio;
  double coherence;
} AqvEstimate;

typedef struct AqvDesignSpec {
  double lambda0_nm;
  double d_nm;
  double unit_cell_x_nm;
  double unit_cell_y_nm;
  enum AqvDesignKind kind;
  /**
   * Zero or negative selects the default 70° aperture.
   */
  double aperture_radius_nm;
} AqvDesignSpec;

typedef struct AqvElement {
  double x_nm;
  double y_nm;
  double lx_nm;
  double ly_nm;
  double rotation_rad;
  double phase_rad;
} AqvElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *aqv_last_error(void);

/**
 * Stationary state reached from the excited level.
 *
 * # Safety
 * `coeffs` must point to a valid struct and `out` to writable memory.
 */
enum AqvStatus aqv_steady_state(const struct AqvDecayCoefficients *coeffs,
                                struct AqvDensityMatrix *out);

/**
 * Closed-form state at time `t`.
 *
 * # Safety
 * As for [`aqv_steady_state`].
 */
enum AqvStatus aqv_evolve_analytic(const struct AqvDecayCoefficients *coeffs,
                                   double t,
                                   struct AqvDensityMatrix *out);

/**
 * Stationary coherence for Cartesian Green components and dipole moments.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
enum AqvStatus aqv_coherence(double im_gxx,
                             double im_gyy,
                             double im_gxy,
                             double d01,
                             double d02,
                             double *re,
                             double *im);

/**
 * `γx/γ0` in front of a perfect mirror of numerical aperture `na`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AqvStatus aqv_gamma_x_ideal(double na, double *out);

/**
 * Generalised reflection law. On an evanescent outcome `*evanescent` is set
 * and `*out` holds the would-be `sin θr` instead of an angle.
 *
 * # Safety
 * `out` and `evanescent` must be writable.
 */
enum AqvStatus aqv_snell(double theta_i_deg,
                         double lambda0_nm,
                         double phase_gradient,
                         double *out,
                         bool *evanescent);

/**
 * The tabulated angle-resolved reflectance of the reference design.
 *
 * # Safety
 * `out` must be writable. Release the handle with [`aqv_profile_free`].
 */
enum AqvStatus aqv_profile_table2(enum AqvTaper taper, struct AqvProfile **out);

/**
 * Loads a `theta_deg,rx,interpolation` CSV.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` writable.
 */
enum AqvStatus aqv_profile_load_csv(const char *path, struct AqvProfile **out);

/**
 * # Safety
 * `profile` must come from this library and not be used afterwards. Null is accepted.
 */
void aqv_profile_free(struct AqvProfile *profile);

/**
 * Reflectance at polar angle `theta_deg`.
 *
 * # Safety
 * `profile` must be a live handle and `out` writable.
 */
enum AqvStatus aqv_profile_rx(const struct AqvProfile *profile, double theta_deg, double *out);

/**
 * Decay rate and coherence for the profile cut at numerical aperture `na`.
 *
 * # Safety
 * `profile` must be a live handle and `out` writable.
 */
enum AqvStatus aqv_estimate(const struct AqvProfile *profile,
                            double na,
                            size_t nodes_theta,
                            size_t nodes_phi,
                            struct AqvEstimate *out);

/**
 * Reference design parameters for `kind` (852 nm, `d = 10 λ0`).
 */
struct AqvDesignSpec aqv_design_spec_default(enum AqvDesignKind kind);

/**
 * Builds a layout; the resonant design uses the built-in five-rod palette.
 *
 * # Safety
 * `spec` must point to a valid struct and `out` be writable. Release the
 * handle with [`aqv_layout_free`].
 */
enum AqvStatus aqv_layout_build(const struct AqvDesignSpec *spec, struct AqvLayout **out);

/**
 * # Safety
 * `layout` must come from this library and not be used afterwards. Null is accepted.
 */
void aqv_layout_free(struct AqvLayout *layout);

/**
 * Number of antennas, or 0 for a null handle.
 *
 * # Safety
 * `layout` must be null or a live handle.
 */
size_t aqv_layout_len(const struct AqvLayout *layout);

/**
 * Number of supercells, or 0 for a null handle.
 *
 * # Safety
 * `layout` must be null or a live handle.
 */
size_t aqv_layout_supercell_count(const struct AqvLayout *layout);

/**
 * Antenna `index` in row-major order.
 *
 * # Safety
 * `layout` must be a live handle and `out` writable.
 */
enum AqvStatus aqv_layout_element(const struct AqvLayout *layout,
                                  size_t index,
                                  struct AqvElement *out);

/**
 * Writes the layout as JSON.
 *
 * # Safety
 * `layout` must be a live handle and `path` a nul-terminated string.
 */
enum AqvStatus aqv_layout_write_json(const struct AqvLayout *layout, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AQV_H */
