#ifndef MOY_H
#define MOY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define MOY_METHOD_STATESUM 0

#define MOY_METHOD_SPANNING 1

#define MOY_METHOD_MATRIXTREE 2

typedef enum MoyStatus {
  MOY_STATUS_OK = 0,
  MOY_STATUS_NULL_POINTER = 1,
  MOY_STATUS_INVALID_INPUT = 2,
  MOY_STATUS_VIOLATION = 3,
  MOY_STATUS_PANIC = 4,
} MoyStatus;

// Opaque plane graph.
typedef struct MoyGraph MoyGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Owned by the library.
const char *moy_last_error(void);

// Parses a graph file.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum MoyStatus moy_graph_from_json(const char *json, struct MoyGraph **out);

// # Safety
// `graph` must come from this library and not be used afterwards. Null is ignored.
void moy_graph_free(struct MoyGraph *graph);

// Serializes a graph; free the result with `moy_string_free`.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum MoyStatus moy_graph_to_json(const struct MoyGraph *graph, char **out);

// Writes whether the graph passes every invariant. A failing graph is not an error;
// the first failed check is left in `moy_last_error`.
//
// # Safety
// `graph` must be a live handle and `valid` a valid pointer.
enum MoyStatus moy_graph_validate(const struct MoyGraph *graph, bool *valid);

// Canonical Alexander polynomial as text, e.g. `1 + 2*t + t^2`.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum MoyStatus moy_alexander(const struct MoyGraph *graph, int method, char **out);

// Number of spanning trees after parallel replacement.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum MoyStatus moy_tree_count(const struct MoyGraph *graph, uint64_t *out);

// Deterministic random graph with `size` vertices.
//
// # Safety
// `out` must be a valid pointer.
enum MoyStatus moy_gen(uint64_t seed, size_t size, struct MoyGraph **out);

// Compares the Crowell polynomial of a PD code with that of its singular projection.
// `crowell` and `singular` may be null when the polynomials are not wanted.
//
// # Safety
// `pd` must be a nul-terminated string, `equal` a valid pointer, and the
// string outputs valid or null.
enum MoyStatus moy_pd_compare(const char *pd, bool *equal, char **crowell, char **singular);

// # Safety
// `s` must be a string returned by this library, or null.
void moy_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOY_H */
