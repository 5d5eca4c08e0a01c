#ifndef COLORLIE_H
#define COLORLIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum ColorlieStatus {
  COLORLIE_STATUS_OK = 0,
  /**
   * A mathematical check failed (invalid axioms, non-cocycle, defective deformation).
   */
  COLORLIE_STATUS_MATH_FAILURE = 1,
  /**
   * Malformed input: JSON, names, degrees, scalar literals.
   */
  COLORLIE_STATUS_INPUT_ERROR = 2,
  COLORLIE_STATUS_NULL_POINTER = 3,
  COLORLIE_STATUS_INVALID_UTF8 = 4,
  /**
   * A panic was caught at the boundary.
   */
  COLORLIE_STATUS_INTERNAL = 5,
} ColorlieStatus;

/**
 * Coefficient module for cohomology.
 */
typedef enum ColorlieModule {
  COLORLIE_MODULE_ADJOINT = 0,
  COLORLIE_MODULE_TRIVIAL = 1,
} ColorlieModule;

/**
 * Opaque handle to a parsed algebra definition.
 */
typedef struct ColorlieAlgebra ColorlieAlgebra;

typedef struct ColorlieCohomologyDims {
  size_t cochains;
  size_t cocycles;
  size_t coboundaries;
  size_t cohomology;
} ColorlieCohomologyDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON algebra definition. With `verify` the color Lie axioms are
 * checked and a violation yields `COLORLIE_STATUS_MATH_FAILURE`.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum ColorlieStatus colorlie_algebra_from_json(const char *json,
                                               bool verify,
                                               struct ColorlieAlgebra **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `alg` must come from [`colorlie_algebra_from_json`] and not be used afterwards.
 */
void colorlie_algebra_free(struct ColorlieAlgebra *alg);

/**
 * Dimension of the algebra, 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t colorlie_algebra_dimension(const struct ColorlieAlgebra *alg);

/**
 * Runs all axiom checks; `*valid` receives the verdict and, when false, the
 * report is available through [`colorlie_last_error`].
 *
 * # Safety
 * `alg` must be a live handle and `valid` a valid pointer.
 */
enum ColorlieStatus colorlie_verify(const struct ColorlieAlgebra *alg, bool *valid);

/**
 * `dim C^n, Z^n, B^n, H^n` in degree `degree` (`"e"`, `"1"`, `"1,0"`, …).
 *
 * # Safety
 * `alg` must be a live handle, `degree` a valid string and `out` a valid pointer.
 */
enum ColorlieStatus colorlie_cohomology_dims(const struct ColorlieAlgebra *alg,
                                             size_t n,
                                             const char *degree,
                                             enum ColorlieModule module,
                                             struct ColorlieCohomologyDims *out);

/**
 * Graded rigidity; `h2_dim` may be null.
 *
 * # Safety
 * `alg` must be a live handle, `rigid` a valid pointer, `h2_dim` null or valid.
 */
enum ColorlieStatus colorlie_is_rigid(const struct ColorlieAlgebra *alg,
                                      bool *rigid,
                                      size_t *h2_dim);

/**
 * PBW normal form of a word such as `"f*e"` or `"f e"`.
 *
 * # Safety
 * `alg` must be a live handle, `word` a valid string and `out` a valid pointer.
 */
enum ColorlieStatus colorlie_pbw_normalize(const struct ColorlieAlgebra *alg,
                                           const char *word,
                                           char **out);

/**
 * Product of two expressions in `U(g)`.
 *
 * # Safety
 * `alg` must be a live handle, `u`, `v` valid strings and `out` a valid pointer.
 */
enum ColorlieStatus colorlie_multiply(const struct ColorlieAlgebra *alg,
                                      const char *u,
                                      const char *v,
                                      char **out);

/**
 * Star product of two expressions in the associated graded algebra, truncated at `t^order`.
 *
 * # Safety
 * `alg` must be a live handle, `u`, `v` valid strings and `out` a valid pointer.
 */
enum ColorlieStatus colorlie_star(const struct ColorlieAlgebra *alg,
                                  const char *u,
                                  const char *v,
                                  size_t order,
                                  char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void colorlie_string_free(char *s);

/**
 * The message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *colorlie_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COLORLIE_H */
