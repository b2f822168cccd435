#ifndef LFUN_H
#define LFUN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes, numbered like the `lfun` exit codes.
 */
typedef enum {
  LFUN_STATUS_OK = 0,
  /*
   Malformed input: bad TOML, non-prime p, unsupported base, ...
   */
  LFUN_STATUS_INVALID_INPUT = 1,
  /*
   A check did not hold, or a mathematical error such as a non-unit pivot.
   */
  LFUN_STATUS_FAILED = 2,
  /*
   Budget, precision or size limit reached.
   */
  LFUN_STATUS_RESOURCE_LIMIT = 3,
  LFUN_STATUS_NULL_POINTER = 4,
  /*
   A Rust panic was caught at the boundary.
   */
  LFUN_STATUS_PANIC = 5,
} LfunStatus;

/*
 An F-module.
 */
typedef struct LfunModule LfunModule;

/*
 A truncated L-series.
 */
typedef struct LfunSeries LfunSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer
 stays valid until the next call into the library from the same thread.
 */
const char *lfun_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void lfun_string_free(char *s);

/*
 Runs a TOML job and stores the JSON result document in `*out`, even
 when the job itself fails (the document then carries the error). The
 status mirrors the `lfun` exit code.

 # Safety
 `toml` is a NUL-terminated string; `out` is writable.
 */
LfunStatus lfun_job_run(const char *toml, char **out);

/*
 Builds the module described by the `[variety]` and `[module]` tables
 of a job (the `command` field is still required).

 # Safety
 `toml` is a NUL-terminated string; `out` is writable.
 */
LfunStatus lfun_module_from_job(const char *toml, LfunModule **out);

/*
 Rank of the module, or 0 for NULL.

 # Safety
 `m` is NULL or a live module handle.
 */
uintptr_t lfun_module_rank(const LfunModule *m);

/*
 # Safety
 `m` is NULL or a live module handle, which this call invalidates.
 */
void lfun_module_free(LfunModule *m);

/*
 L-series of the module through `t^degree`, from the Euler product.

 # Safety
 `m` is a live module handle; `out` is writable.
 */
LfunStatus lfun_l_euler(const LfunModule *m, uintptr_t degree, uint64_t budget, LfunSeries **out);

/*
 Same series, computed from fiber power sums.

 # Safety
 `m` is a live module handle; `out` is writable.
 */
LfunStatus lfun_l_expsum(const LfunModule *m, uintptr_t degree, uint64_t budget, LfunSeries **out);

/*
 Truncation degree of the series, or 0 for NULL.

 # Safety
 `s` is NULL or a live series handle.
 */
uintptr_t lfun_series_degree(const LfunSeries *s);

/*
 Coefficient of `t^k`, as `p^exponent * value`. `value` is written as
 decimal digits; over a ramified ring its coordinates in powers of the
 uniformizer are separated by spaces. `prec` gets the absolute precision
 of `value` in uniformizer units. Any of the output pointers may be NULL.

 # Safety
 `s` is a live series handle; non-NULL outputs are writable.
 */
LfunStatus lfun_series_coefficient(const LfunSeries *s,
                                   uintptr_t k,
                                   char **value,
                                   int64_t *exponent,
                                   uint32_t *prec);

/*
 # Safety
 `s` is NULL or a live series handle, which this call invalidates.
 */
void lfun_series_free(LfunSeries *s);

/*
 Unit root of Frobenius on the Legendre curve `y^2 = x(x-1)(x-λ)` over
 `F_{p^r}`, to precision `p^n`, through Dwork's congruence formula. `λ` is
 a field element index (its base-p digits are the coordinates).

 # Safety
 `out` is writable.
 */
LfunStatus lfun_legendre_unit_root(uint64_t p, uint32_t r, uint32_t lambda, uint32_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LFUN_H */
