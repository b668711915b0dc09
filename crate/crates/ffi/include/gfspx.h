#ifndef GFSPX_H
#define GFSPX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GfspxStatus {
  GFSPX_STATUS_OK = 0,
  GFSPX_STATUS_NULL_POINTER = 1,
  GFSPX_STATUS_INVALID_ARGUMENT = 2,
  GFSPX_STATUS_UNKNOWN_COMPONENT = 3,
  GFSPX_STATUS_SIMULATION = 4,
  GFSPX_STATUS_PANIC = 5,
} GfspxStatus;

typedef enum GfspxDepthMode {
  GFSPX_DEPTH_MODE_PAPER = 0,
  GFSPX_DEPTH_MODE_UNIFORM1 = 1,
  GFSPX_DEPTH_MODE_UNIFORM7 = 2,
} GfspxDepthMode;

typedef enum GfspxFormat {
  GFSPX_FORMAT_JSON = 0,
  GFSPX_FORMAT_QASM = 1,
} GfspxFormat;

/**
 * Opaque circuit handle.
 */
typedef struct GfspxCircuit GfspxCircuit;

/**
 * Gate counts; `mcx` sums multi-controlled gates of every arity.
 */
typedef struct GfspxHistogram {
  uint64_t not_gates;
  uint64_t cnot;
  uint64_t ccnot;
  uint64_t swap;
  uint64_t mcx;
} GfspxHistogram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next gfspx call on the same thread.
 */
const char *gfspx_last_error(void);

/**
 * Library version, static storage.
 */
const char *gfspx_version(void);

/**
 * # Safety
 * `ciphertext` must be valid for writes.
 */
enum GfspxStatus gfspx_encrypt(uint64_t plaintext,
                               uint64_t key_hi,
                               uint64_t key_lo,
                               uint64_t *ciphertext);

/**
 * # Safety
 * `plaintext` must be valid for writes.
 */
enum GfspxStatus gfspx_decrypt(uint64_t ciphertext,
                               uint64_t key_hi,
                               uint64_t key_lo,
                               uint64_t *plaintext);

/**
 * Builds a named component ("sbox", "f2-inv", "round:3", "gfspx", ...).
 * Oracles need pairs; use [`gfspx_oracle_build`].
 *
 * # Safety
 * `name` must be a NUL-terminated string; `circuit` valid for writes.
 */
enum GfspxStatus gfspx_circuit_build(const char *name, struct GfspxCircuit **circuit);

/**
 * Grover oracle over `r` known pairs (`r` is 2 or 3).
 *
 * # Safety
 * `plaintexts` and `ciphertexts` must each hold `r` values; `circuit`
 * valid for writes.
 */
enum GfspxStatus gfspx_oracle_build(size_t r,
                                    const uint64_t *plaintexts,
                                    const uint64_t *ciphertexts,
                                    struct GfspxCircuit **circuit);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `circuit` must come from a gfspx builder and not be freed twice.
 */
void gfspx_circuit_free(struct GfspxCircuit *circuit);

/**
 * # Safety
 * `circuit` must be a live handle; `width` valid for writes.
 */
enum GfspxStatus gfspx_circuit_width(const struct GfspxCircuit *circuit, size_t *width);

/**
 * # Safety
 * `circuit` must be a live handle; `histogram` valid for writes.
 */
enum GfspxStatus gfspx_circuit_histogram(const struct GfspxCircuit *circuit,
                                         struct GfspxHistogram *histogram);

/**
 * ASAP depth under the chosen weighting.
 *
 * # Safety
 * `circuit` must be a live handle; `depth_out` valid for writes.
 */
enum GfspxStatus gfspx_circuit_depth(const struct GfspxCircuit *circuit,
                                     enum GfspxDepthMode mode,
                                     uint64_t *depth_out);

/**
 * Runs one basis state through the circuit. Both buffers hold one byte per
 * qubit (0 or nonzero), qubit 0 first; `len` must equal the width.
 *
 * # Safety
 * `input` and `output` must be valid for `len` bytes and may alias.
 */
enum GfspxStatus gfspx_circuit_simulate(const struct GfspxCircuit *circuit,
                                        const uint8_t *input,
                                        uint8_t *output,
                                        size_t len);

/**
 * Serializes the circuit. The string is owned by the caller and must be
 * released with [`gfspx_string_free`].
 *
 * # Safety
 * `circuit` must be a live handle; `text` valid for writes.
 */
enum GfspxStatus gfspx_circuit_export(const struct GfspxCircuit *circuit,
                                      enum GfspxFormat format,
                                      char **text);

/**
 * # Safety
 * `text` must come from [`gfspx_circuit_export`]; NULL is ignored.
 */
void gfspx_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GFSPX_H */
