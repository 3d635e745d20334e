/* C interface for the shadow-calculus library. */

#ifndef SHADOWCALC_H
#define SHADOWCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum ScStatus {
  /**
   * Success.
   */
  ScOk = 0,
  /**
   * A null pointer or malformed UTF-8 argument.
   */
  ScNullArgument = 1,
  /**
   * The input text failed to parse or validate.
   */
  ScParseError = 2,
  /**
   * The diagram reduction precondition failed.
   */
  ScReductionError = 3,
  /**
   * The Newton solve diverged or left the geometric region.
   */
  ScSolveError = 4,
  /**
   * An index argument is out of range.
   */
  ScIndexError = 5,
  /**
   * Arguments violate a documented precondition.
   */
  ScDomainError = 6,
  /**
   * An internal invariant failed.
   */
  ScInternalError = 7,
} ScStatus;

/**
 * Opaque parsed link diagram.
 */
typedef struct ScDiagram ScDiagram;

/**
 * Opaque diagram shadow (polyhedron, branching, gleams).
 */
typedef struct ScShadow ScShadow;

/**
 * Opaque ideal triangulation.
 */
typedef struct ScTriangulation ScTriangulation;

/**
 * Solution summary of a gluing-equation solve.
 */
typedef struct ScSolution {
  uintptr_t tetrahedra;
  double residual;
  double volume;
  uintptr_t cusp_count;
  /**
   * 1 when some tetrahedron is within tolerance of flat.
   */
  int32_t flat_warning;
} ScSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse planar-diagram text into a diagram handle.
 */
enum ScStatus sc_diagram_parse(const char *text, struct ScDiagram **out);

/**
 * Release a diagram handle.
 */
void sc_diagram_free(struct ScDiagram *d);

/**
 * Build the starred shadow (faces plus annuli) of a diagram.
 */
enum ScStatus sc_shadow_star(const struct ScDiagram *d, struct ScShadow **out);

/**
 * Build the reduced shadow (outer region removed, best annulus
 * orientations).
 */
enum ScStatus sc_shadow_reduce(const struct ScDiagram *d, struct ScShadow **out);

/**
 * Release a shadow handle.
 */
void sc_shadow_free(struct ScShadow *s);

/**
 * Number of regions of the shadow polyhedron.
 */
uintptr_t sc_shadow_region_count(const struct ScShadow *s);

/**
 * Copy the gleams (one per internal region, in region order) into `buf`;
 * writes the required length to `len` and fills at most the given
 * capacity.
 */
enum ScStatus sc_shadow_gleams(const struct ScShadow *s,
                               double *buf,
                               uintptr_t capacity,
                               uintptr_t *len);

/**
 * Build the canonical 10-tetrahedron double cover.
 */
enum ScStatus sc_cover_build(struct ScTriangulation **out);

/**
 * Parse triangulation text into a handle.
 */
enum ScStatus sc_triangulation_parse(const char *text, struct ScTriangulation **out);

/**
 * Serialize a triangulation; the returned string must be released with
 * `sc_string_free`.
 */
enum ScStatus sc_triangulation_serialize(const struct ScTriangulation *t, char **out);

/**
 * Release a triangulation handle.
 */
void sc_triangulation_free(struct ScTriangulation *t);

/**
 * Number of shipped pants regluings (index 0 is the identity).
 */
uintptr_t sc_reglue_count(void);

/**
 * Apply the shipped pants regluing with the given index to the canonical
 * cover.
 */
enum ScStatus sc_reglue_apply(uintptr_t index, struct ScTriangulation **out);

/**
 * Solve the gluing and completeness equations and summarize the solution.
 */
enum ScStatus sc_solve(const struct ScTriangulation *t,
                       uint64_t seed,
                       double tol,
                       struct ScSolution *out);

/**
 * The two volume constants (regular ideal tetrahedron and octahedron).
 */
enum ScStatus sc_volume_constants(double *v_tet, double *v_oct);

/**
 * Closed volume formula 2(n - 2m) v_oct + 10 m v_tet; rejects n <= 0,
 * m < 0, and n < 2m.
 */
enum ScStatus sc_volume_formula(int64_t n, int64_t m, double *out);

/**
 * Release a string returned by this library.
 */
void sc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SHADOWCALC_H */
