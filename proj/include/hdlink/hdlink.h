/* C interface for the high-dimensional link invariant engine.
 *
 * All functions return hdl_status (HDL_OK == 0 on success). On failure the
 * thread-local error message is available via hdl_last_error(). Links are
 * opaque handles owned by the caller and released with hdl_link_free().
 * Variable-size results are returned as heap-allocated UTF-8 strings
 * (JSON or plain text) released with hdl_string_free().
 */
#ifndef HDLINK_H
#define HDLINK_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hdl_link hdl_link;

typedef enum hdl_status {
    HDL_OK = 0,
    HDL_ERR_DIMENSION = 1,
    HDL_ERR_RANK_DEFICIENT = 2,
    HDL_ERR_NON_GENERIC_INTERSECTION = 3,
    HDL_ERR_APEX_DEGENERATE = 4,
    HDL_ERR_CYCLES_INTERSECT = 5,
    HDL_ERR_NON_GENERIC_APEX = 6,
    HDL_ERR_NON_GENERIC_DIRECTION = 7,
    HDL_ERR_NO_VALID_PROJECTION_POINT = 8,
    HDL_ERR_PERTURBATION_TOO_LARGE = 9,
    HDL_ERR_NON_GENERIC_PROJECTION = 10,
    HDL_ERR_GENERICITY_UNREACHABLE = 11,
    HDL_ERR_PUSH_OFF_COLLISION = 12,
    HDL_ERR_UMBRELLA_PRESENT = 13,
    HDL_ERR_CONSISTENCY_FAILURE = 14,
    HDL_ERR_NON_INTEGER = 15,
    HDL_ERR_LATTICE_VIOLATION = 16,
    HDL_ERR_NEIGHBORHOOD_OVERLAP = 17,
    HDL_ERR_SELECTOR_INVALID = 18,
    HDL_ERR_PARAMETER_VIOLATION = 19,
    HDL_ERR_NO_CORRIDOR = 20,
    HDL_ERR_NOT_A_BRAID = 21,
    HDL_ERR_INVALID_INPUT = 22,
    HDL_ERR_UNKNOWN = 99
} hdl_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* hdl_last_error(void);

void hdl_string_free(char* s);
void hdl_link_free(hdl_link* link);

/* Build a named generator. `params` is a JSON object string (or NULL/"{}"),
 * e.g. {"alpha":[4,1],"beta":[1,1]} for borromean or {"k":3} for unlink.
 * Known names: borromean, b1, b2, trefoil, mirror-trefoil, cable-trefoil,
 * whitehead-aa, whitehead-idid, unknot, unlink. */
hdl_status hdl_gen(const char* name, const char* params, hdl_link** out);

/* Link-file JSON (see docs): parse and serialize, bit-exact round trip. */
hdl_status hdl_link_parse(const char* text, hdl_link** out);
hdl_status hdl_link_serialize(const hdl_link* link, char** out_json);

/* Structural validation. *out_ok is 1/0; *out_problems (optional) receives a
 * JSON array of problem strings. Status is HDL_OK even when invalid. */
hdl_status hdl_link_validate(const hdl_link* link, int* out_ok,
                             char** out_problems);

/* Summary: {"l":2,"kind":...,"components":[{"vertices":n,"top_simplices":n,
 * "long":bool}...],"smale_term":...,"provenance":...} */
hdl_status hdl_link_info(const hdl_link* link, char** out_json);

/* Invariants. `which` is "V", "W" or "H". For "H" a smale term must be
 * available: from the link metadata, or overridden by `smale` ("a/b" string,
 * may be NULL). The report JSON carries values, named intermediates and
 * consistency checks. */
hdl_status hdl_invariant(const hdl_link* link, const char* which,
                         uint64_t seed, const char* smale, char** out_report);

/* Double-point locus dump (resolves to a generic projection first):
 * curve count, per-curve segment counts, closedness, over/under component
 * indices, and preimage-circle linking data. */
hdl_status hdl_locus(const hdl_link* link, uint64_t seed, char** out_json);

/* Seeded exact perturbation of all interior vertices (genericity
 * preserved); used by the verification harness. */
hdl_status hdl_perturb(const hdl_link* link, uint64_t seed, hdl_link** out);

/* Exact volume-preserving shear of the ambient coordinates that changes the
 * projection direction but keeps every generator invariant computable;
 * `index` in [0, 5) selects which of the five standard shears. */
hdl_status hdl_shear(const hdl_link* link, int index, hdl_link** out);

#ifdef __cplusplus
}
#endif

#endif
