#ifndef BRAIDED_ROVER_H
#define BRAIDED_ROVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result code of every fallible call.
 */
typedef enum BrvStatus {
  BRV_STATUS_OK = 0,
  BRV_STATUS_NULL_POINTER = 1,
  BRV_STATUS_INVALID_UTF8 = 2,
  BRV_STATUS_PARSE = 3,
  /**
   * Operands from incompatible tables, degrees or strand counts.
   */
  BRV_STATUS_MISMATCH = 4,
  /**
   * Any other precondition failure reported by the library.
   */
  BRV_STATUS_INVALID = 5,
  BRV_STATUS_PANIC = 6,
} BrvStatus;

/**
 * Three-valued answer of an equality or identity test.
 */
typedef enum BrvVerdict {
  BRV_VERDICT_EQUAL = 0,
  BRV_VERDICT_UNEQUAL = 1,
  BRV_VERDICT_UNKNOWN = 2,
} BrvVerdict;

/**
 * The groupoid of triples over a table.
 */
typedef struct BrvGroupoid BrvGroupoid;

/**
 * A recursion table (generators and their wreath recursion).
 */
typedef struct BrvTable BrvTable;

/**
 * A triple `[forest ; group element ; forest]`.
 */
typedef struct BrvTriple BrvTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *brv_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void brv_string_free(char *s);

/**
 * Loads a built-in table: `brgrig`, `grig` or `zwrz`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum BrvStatus brv_table_builtin(const char *name, struct BrvTable **out);

/**
 * Parses a table in the text format accepted by `brv`.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum BrvStatus brv_table_parse(const char *source, struct BrvTable **out);

/**
 * # Safety
 * `table` must be null or a table from this library, not yet freed.
 */
void brv_table_free(struct BrvTable *table);

/**
 * Decides whether `word` is the identity, exploring at most `budget`
 * levels of the recursion.
 *
 * # Safety
 * Pointers must be valid; `word` nul-terminated; `out` writable.
 */
enum BrvStatus brv_word_is_identity(const struct BrvTable *table,
                                    const char *word,
                                    size_t budget,
                                    enum BrvVerdict *out);

/**
 * Decides whether two words represent the same group element.
 *
 * # Safety
 * Pointers must be valid; words nul-terminated; `out` writable.
 */
enum BrvStatus brv_word_eq(const struct BrvTable *table,
                           const char *lhs,
                           const char *rhs,
                           size_t budget,
                           enum BrvVerdict *out);

/**
 * Formats the wreath recursion of `word` as `root (s1, ..., sd)`. The
 * string must be released with [`brv_string_free`].
 *
 * # Safety
 * Pointers must be valid; `word` nul-terminated; `out` writable.
 */
enum BrvStatus brv_word_sections(const struct BrvTable *table, const char *word, char **out);

/**
 * Builds the groupoid of triples over a copy of `table`.
 *
 * # Safety
 * `table` must be valid; `out` writable.
 */
enum BrvStatus brv_groupoid_new(const struct BrvTable *table, struct BrvGroupoid **out);

/**
 * # Safety
 * `groupoid` must be null or a groupoid from this library, not yet freed.
 */
void brv_groupoid_free(struct BrvGroupoid *groupoid);

/**
 * Parses a triple such as `[∧;(a,b);∧]`.
 *
 * # Safety
 * Pointers must be valid; `source` nul-terminated; `out` writable.
 */
enum BrvStatus brv_triple_parse(const struct BrvGroupoid *groupoid,
                                const char *source,
                                struct BrvTriple **out);

/**
 * # Safety
 * `triple` must be null or a triple from this library, not yet freed.
 */
void brv_triple_free(struct BrvTriple *triple);

/**
 * Formats a triple in the same syntax accepted by [`brv_triple_parse`].
 *
 * # Safety
 * Pointers must be valid; `out` writable.
 */
enum BrvStatus brv_triple_format(const struct BrvGroupoid *groupoid,
                                 const struct BrvTriple *triple,
                                 char **out);

/**
 * Number of leaves of the right forest (the source object).
 *
 * # Safety
 * `triple` must be valid; `out` writable.
 */
enum BrvStatus brv_triple_feet(const struct BrvTriple *triple, size_t *out);

/**
 * Composes `lhs · rhs`, expanding both sides to a common forest.
 *
 * # Safety
 * Pointers must be valid; `out` writable.
 */
enum BrvStatus brv_triple_multiply(const struct BrvGroupoid *groupoid,
                                   const struct BrvTriple *lhs,
                                   const struct BrvTriple *rhs,
                                   struct BrvTriple **out);

/**
 * # Safety
 * Pointers must be valid; `out` writable.
 */
enum BrvStatus brv_triple_invert(const struct BrvGroupoid *groupoid,
                                 const struct BrvTriple *triple,
                                 struct BrvTriple **out);

/**
 * Greedily removes carets. `partial` is set when some reduction could not
 * be decided within the groupoid's budget.
 *
 * # Safety
 * Pointers must be valid; `out` and `partial` writable.
 */
enum BrvStatus brv_triple_reduce(const struct BrvGroupoid *groupoid,
                                 const struct BrvTriple *triple,
                                 struct BrvTriple **out,
                                 bool *partial);

/**
 * Equality of two triples as groupoid elements.
 *
 * # Safety
 * Pointers must be valid; `out` writable.
 */
enum BrvStatus brv_triple_eq(const struct BrvGroupoid *groupoid,
                             const struct BrvTriple *lhs,
                             const struct BrvTriple *rhs,
                             enum BrvVerdict *out);

/**
 * Whether `rhs = lhs [1, h, 1]` for some `h` with entries in
 * `Z = <b, c, d>`. Only defined over the braided Grigorchuk table.
 *
 * # Safety
 * Pointers must be valid; `out` writable.
 */
enum BrvStatus brv_triple_eq_mod_z(const struct BrvGroupoid *groupoid,
                                   const struct BrvTriple *lhs,
                                   const struct BrvTriple *rhs,
                                   enum BrvVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDED_ROVER_H */
