#ifndef COPRIMENET_H
#define COPRIMENET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes returned by every fallible function.
typedef enum CpnStatus {
  CPN_STATUS_OK = 0,
  // A required pointer argument was null.
  CPN_STATUS_NULL_POINTER = 1,
  // An argument was outside the operation's domain.
  CPN_STATUS_DOMAIN = 2,
  // The request exceeded a resource cap.
  CPN_STATUS_SIZE_CAP = 3,
  // The graph is disconnected where connectivity is required.
  CPN_STATUS_DISCONNECTED = 4,
  // An eigensolver did not converge.
  CPN_STATUS_NON_CONVERGENCE = 5,
  // The label is not a node of the network.
  CPN_STATUS_NOT_FOUND = 6,
  // The caller's buffer is too small.
  CPN_STATUS_BUFFER_TOO_SMALL = 7,
  CPN_STATUS_IO = 8,
  // A Rust panic was caught at the boundary.
  CPN_STATUS_PANIC = 9,
  CPN_STATUS_INTERNAL = 10,
} CpnStatus;

// Opaque network handle.
typedef struct CpnNetwork CpnNetwork;

// Summary statistics; `diameter` is -1 when the graph is disconnected
// and `link_density` is NaN for fewer than two nodes.
typedef struct CpnStats {
  uint64_t n;
  uint64_t node_count;
  uint64_t edge_count;
  uint64_t max_degree;
  double link_density;
  double avg_degree;
  double avg_clustering;
  int64_t diameter;
} CpnStats;

// Laplacian extremes and solver diagnostics.
typedef struct CpnSpectral {
  double lambda2;
  double lambda_n;
  double sync_ratio;
  double lambda1_adj;
  uint64_t iterations;
  double residual;
} CpnSpectral;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *cpn_version(void);

// Message for the last failed call on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *cpn_last_error_message(void);

// Build the network on the composites in `[4, n]`, refusing `n > max_n`
// (0 selects the library default cap).
//
// # Safety
// `out` must be valid for writing one pointer.
enum CpnStatus cpn_network_build(uint64_t n, uint64_t max_n, struct CpnNetwork **out);

// Release a handle. Null is ignored.
//
// # Safety
// `net` must be null or a handle from `cpn_network_build` not yet freed.
void cpn_network_free(struct CpnNetwork *net);

// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_node_count(const struct CpnNetwork *net, uint64_t *out);

// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_edge_count(const struct CpnNetwork *net, uint64_t *out);

// Copy node labels in ascending order into `buf`. `written` receives
// the node count; if `len` is smaller, nothing is copied and
// `BufferTooSmall` is returned. `buf` may be null when `len` is 0.
//
// # Safety
// `buf` must be valid for `len` writes and `written` for one.
enum CpnStatus cpn_network_labels(const struct CpnNetwork *net,
                                  uint64_t *buf,
                                  uintptr_t len,
                                  uintptr_t *written);

// Degree of the node labelled `label`.
//
// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_degree(const struct CpnNetwork *net, uint64_t label, uint64_t *out);

// Whether labels `k` and `l` are adjacent.
//
// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_has_edge(const struct CpnNetwork *net,
                                    uint64_t k,
                                    uint64_t l,
                                    bool *out);

// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_stats(const struct CpnNetwork *net, struct CpnStats *out);

// Laplacian `lambda_2`, `lambda_N` and the adjacency `lambda_1`, with the
// start vector drawn from `seed`. Fails with `Disconnected` when the
// network is not connected.
//
// # Safety
// `net` must be a live handle and `out` valid for writes.
enum CpnStatus cpn_network_spectral(const struct CpnNetwork *net,
                                    uint64_t seed,
                                    struct CpnSpectral *out);

// Write the `u v` label edge list to `path`.
//
// # Safety
// `net` must be a live handle and `path` a NUL-terminated string.
enum CpnStatus cpn_network_write_edge_list(const struct CpnNetwork *net, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COPRIMENET_H */
