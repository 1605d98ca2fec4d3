#ifndef DIFFUSION_AUCTION_H
#define DIFFUSION_AUCTION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum DaStatus {
  DA_STATUS_OK = 0,
  DA_STATUS_NULL_POINTER = 1,
  DA_STATUS_INVALID_UTF8 = 2,
  DA_STATUS_PARSE_ERROR = 3,
  DA_STATUS_INVALID_GRAPH = 4,
  DA_STATUS_UNKNOWN_MECHANISM = 5,
  DA_STATUS_WEIGHTED_GRAPH = 6,
  DA_STATUS_NOT_FOUND = 7,
  DA_STATUS_INTERNAL = 8,
} DaStatus;

// A validated graph.
typedef struct DaGraph DaGraph;

// A mechanism outcome at the truthful profile of the graph it was run on.
typedef struct DaOutcome DaOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *da_last_error(void);

// Parses a graph document (JSON text) into a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum DaStatus da_graph_from_json(const char *json, struct DaGraph **out);

// # Safety
// `graph` must be null or a handle from [`da_graph_from_json`] not yet freed.
void da_graph_free(struct DaGraph *graph);

// Number of nodes besides the seller.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum DaStatus da_graph_node_count(const struct DaGraph *graph, size_t *out);

// Runs `mechanism` (`vickrey`, `cdm-idm`, `cdm-beta` or `wdm`) at the
// truthful profile. A market with no bidder yields a no-sale outcome.
//
// # Safety
// `graph` must be a live handle, `mechanism` a NUL-terminated string and
// `out` writable.
enum DaStatus da_run(const struct DaGraph *graph, const char *mechanism, struct DaOutcome **out);

// # Safety
// `outcome` must be null or a handle from [`da_run`] not yet freed.
void da_outcome_free(struct DaOutcome *outcome);

// # Safety
// `outcome` must be a live handle; `numer` and `denom` writable.
enum DaStatus da_outcome_revenue(const struct DaOutcome *outcome, int64_t *numer, int64_t *denom);

// # Safety
// `outcome` must be a live handle; `numer` and `denom` writable.
enum DaStatus da_outcome_welfare(const struct DaOutcome *outcome, int64_t *numer, int64_t *denom);

// Payment of node `id`; nodes that pay nothing report zero.
//
// # Safety
// `outcome` must be a live handle, `id` a NUL-terminated string, `numer`
// and `denom` writable.
enum DaStatus da_outcome_payment(const struct DaOutcome *outcome,
                                 const char *id,
                                 int64_t *numer,
                                 int64_t *denom);

// Winner identifier as a new string, released with [`da_string_free`].
// Returns `NotFound` when the item is not sold.
//
// # Safety
// `outcome` must be a live handle and `out` writable.
enum DaStatus da_outcome_winner(const struct DaOutcome *outcome, char **out);

// The outcome as a JSON document, released with [`da_string_free`].
//
// # Safety
// `outcome` must be a live handle and `out` writable.
enum DaStatus da_outcome_to_json(const struct DaOutcome *outcome, char **out);

// # Safety
// `text` must be null or a string returned by this library, not yet freed.
void da_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIFFUSION_AUCTION_H */
