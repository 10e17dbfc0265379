#ifndef HALL2P_H
#define HALL2P_H

/* C interface to the hall2p library.  All functions returning h2p_status
 * follow the same protocol: H2P_OK means the computation ran and every
 * enforced check passed; H2P_ERR_MATH means the computation ran to the end
 * and found a genuine violation (the report text carries the counterexample);
 * the remaining codes mean the computation could not run, with a message
 * available from h2p_last_error().  Strings returned through char** are
 * heap-allocated and must be released with h2p_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum h2p_status {
  H2P_OK = 0,
  H2P_ERR_PARSE = 1,    /* malformed algebra / complex / table text */
  H2P_ERR_USAGE = 2,    /* precondition violated by the caller */
  H2P_ERR_CAPACITY = 3, /* an enumeration would exceed the requested cap */
  H2P_ERR_MATH = 4,     /* a verified mathematical violation was found */
  H2P_ERR_INTERNAL = 5  /* invariant broken inside the library */
} h2p_status;

typedef struct h2p_algebra h2p_algebra;
typedef struct h2p_complex h2p_complex;
typedef struct h2p_table h2p_table;

/* Footer numbers of a report: how many checks were enforced and how many
 * rows were recorded without an enforced check (capacity skips and
 * informational rows). */
typedef struct h2p_summary {
  int pass;
  uint64_t checked;
  uint64_t skipped;
} h2p_summary;

const char* h2p_version(void);

/* Message of the most recent failing call on this thread; empty string when
 * the last call succeeded.  The pointer stays valid until the next call. */
const char* h2p_last_error(void);

void h2p_string_free(char* s);

/* --- algebras ----------------------------------------------------------- */

h2p_status h2p_algebra_parse(const char* text, h2p_algebra** out);

/* The same quiver and relations over the prime field F_p. */
h2p_status h2p_algebra_refield(const h2p_algebra* a, uint32_t p,
                               h2p_algebra** out);

void h2p_algebra_free(h2p_algebra* a);

uint32_t h2p_algebra_field(const h2p_algebra* a);
int32_t h2p_algebra_num_vertices(const h2p_algebra* a);

/* Stable content hash of the parsed description (hex text). */
h2p_status h2p_algebra_hash(const h2p_algebra* a, char** out);

/* --- complexes ---------------------------------------------------------- */

h2p_status h2p_complex_parse(const h2p_algebra* a, const char* text,
                             h2p_complex** out);
h2p_status h2p_complex_serialize(const h2p_complex* x, char** out);
void h2p_complex_free(h2p_complex* x);

/* --- reports ------------------------------------------------------------ */

/* Every report is deterministic text: a header naming the tool version, the
 * algebra hash and the parameters, one line per item in a fixed order, and a
 * footer "RESULT pass|fail checked=<n> skipped=<m>".  cap1 and cap0 are the
 * componentwise multiplicity bounds of the window, each of length nv =
 * h2p_algebra_num_vertices(). */

h2p_status h2p_report_info(const h2p_algebra* a, char** report);

h2p_status h2p_report_enumerate(const h2p_algebra* a, const int32_t* cap1,
                                const int32_t* cap0, size_t nv,
                                uint64_t max_enum, char** report,
                                h2p_summary* summary);

/* Subcomplex counts over the window, brute-force against the closed form,
 * for every ordered pair of indecomposable classes and every middle built
 * from a window class plus contractible padding. */
h2p_status h2p_report_hall(const h2p_algebra* a, const int32_t* cap1,
                           const int32_t* cap0, size_t nv, uint64_t max_enum,
                           char** report, h2p_summary* summary);

/* Triangle counts F over the window; where both the orbit count and the
 * coset form are feasible they are checked against each other mod (q-1). */
h2p_status h2p_report_triangles(const h2p_algebra* a, const int32_t* cap1,
                                const int32_t* cap0, size_t nv,
                                uint64_t max_enum, char** report,
                                h2p_summary* summary);

/* g = F mod (q-1) on every padding-free triple of the window; padded rows
 * are recorded without being enforced. */
h2p_status h2p_report_congruence(const h2p_algebra* a, const int32_t* cap1,
                                 const int32_t* cap0, size_t nv,
                                 uint64_t max_enum, char** report,
                                 h2p_summary* summary);

/* --- bracket tables ------------------------------------------------------ */

/* side: 0 = exact structure constants, 1 = triangulated. */
h2p_status h2p_table_build(const h2p_algebra* a, const int32_t* cap1,
                           const int32_t* cap0, size_t nv, int side,
                           uint64_t max_enum, h2p_table** out);

/* Integer constants common to all listed primes (at least three),
 * modulus 0. */
h2p_status h2p_table_classical(const h2p_algebra* a, const int32_t* cap1,
                               const int32_t* cap0, size_t nv, int side,
                               const uint32_t* primes, size_t nprimes,
                               uint64_t max_enum, h2p_table** out);

h2p_status h2p_table_serialize(const h2p_table* t, char** out);
h2p_status h2p_table_parse(const char* text, h2p_table** out);
void h2p_table_free(h2p_table* t);

h2p_status h2p_report_jacobi(const h2p_table* t, char** report,
                             h2p_summary* summary);

h2p_status h2p_report_compare(const h2p_table* exact_side,
                              const h2p_table* triangulated_side,
                              char** report, h2p_summary* summary);

/* type: "A1" or "A2". */
h2p_status h2p_report_chevalley(const h2p_table* t, const char* type,
                                char** report, h2p_summary* summary);

/* Counting-polynomial layer over the listed primes (ascending, at least
 * three): Hom/Ext point counts against their dimension fits, the
 * contractible automorphism series against t^2 - 1, the commutation of
 * contractible classes past every indecomposable window class, and the
 * classical limits of interpolated structure constants against the
 * modulus-0 table. */
h2p_status h2p_report_motivic(const h2p_algebra* a, const int32_t* cap1,
                              const int32_t* cap0, size_t nv,
                              const uint32_t* primes, size_t nprimes,
                              uint64_t max_enum, char** report,
                              h2p_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
