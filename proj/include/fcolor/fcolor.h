/* C interface to the fcolor library.
 *
 * Every call returns an fcolor_status. On failure the message for the calling
 * thread is available from fcolor_last_error() until the next call on that
 * thread. Strings returned through char** outputs are owned by the caller and
 * released with fcolor_string_free(). Results are JSON documents carrying
 * {"schema": "fcolor/1"}.
 */
#ifndef FCOLOR_FCOLOR_H
#define FCOLOR_FCOLOR_H

#include <stddef.h>

#if defined(FCOLOR_BUILDING_LIBRARY)
#define FCOLOR_API __attribute__((visibility("default")))
#else
#define FCOLOR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fcolor_status {
  FCOLOR_OK = 0,
  FCOLOR_ERR_INVALID_ARGUMENT = 1, /* bad handle, null pointer, out-of-range parameter */
  FCOLOR_ERR_INVALID_INPUT = 2,    /* malformed instance, symbol or coloring */
  FCOLOR_ERR_BUDGET = 3,           /* a search or enumeration budget would be exceeded */
  FCOLOR_ERR_INFEASIBLE = 4,       /* no coloring with the requested parameters */
  FCOLOR_ERR_DECODE = 5,           /* framing, unknown codeword or side-information mismatch */
  FCOLOR_ERR_UNDEFINED = 6,        /* quantity undefined for this input (e.g. zero fractional rate) */
  FCOLOR_ERR_INTERNAL = 7
} fcolor_status;

typedef enum fcolor_color_mode {
  FCOLOR_CHROMATIC = 0,  /* least a admitting an a:b coloring */
  FCOLOR_MIN_ENTROPY = 1 /* minimum-entropy a:b coloring */
} fcolor_color_mode;

typedef struct fcolor_model fcolor_model;
typedef struct fcolor_config fcolor_config;

FCOLOR_API const char* fcolor_version(void);
FCOLOR_API const char* fcolor_status_name(fcolor_status status);
FCOLOR_API const char* fcolor_last_error(void);
FCOLOR_API void fcolor_string_free(char* s);
FCOLOR_API void fcolor_bytes_free(unsigned char* bytes);

/* Source models (instance documents). */
FCOLOR_API fcolor_status fcolor_model_load_file(const char* path, fcolor_model** out);
FCOLOR_API fcolor_status fcolor_model_load_json(const char* json, fcolor_model** out);
FCOLOR_API fcolor_status fcolor_model_to_json(const fcolor_model* model, char** out_json);
FCOLOR_API void fcolor_model_free(fcolor_model* model);

/* Run configuration. New configs start from the defaults overridden by the
 * FCOLOR_BUDGET environment variable ("key=value,..."). */
FCOLOR_API fcolor_status fcolor_config_new(fcolor_config** out);
FCOLOR_API fcolor_status fcolor_config_set_budget(fcolor_config* config, const char* overrides);
FCOLOR_API fcolor_status fcolor_config_set_threads(fcolor_config* config, unsigned threads);
FCOLOR_API fcolor_status fcolor_config_set_b_star_bound(fcolor_config* config, int bound);
FCOLOR_API fcolor_status fcolor_config_to_json(const fcolor_config* config, char** out_json);
FCOLOR_API void fcolor_config_free(fcolor_config* config);

/* Characteristic graph of length-n blocks: vertex/edge counts, independent
 * set counts, edge witnesses (n = 1). config may be NULL. */
FCOLOR_API fcolor_status fcolor_build(const fcolor_model* model, const fcolor_config* config, unsigned n,
                                      char** out_json);

/* DOT text for the length-n graph, optionally colored by a coloring document
 * ({"b", "a", "assignment"}; NULL for none). */
FCOLOR_API fcolor_status fcolor_build_dot(const fcolor_model* model, const fcolor_config* config, unsigned n,
                                          const char* coloring_json, char** out_dot);

/* Colors the length-n graph with b colors per vertex. For FCOLOR_MIN_ENTROPY
 * a = 0 selects the default palette (all vertices for b = 1, chi_b otherwise). */
FCOLOR_API fcolor_status fcolor_color(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                                      fcolor_color_mode mode, int a, char** out_json);

/* The covering program over maximal independent sets with demand b, its LP
 * relaxation and its integer optimum. */
FCOLOR_API fcolor_status fcolor_dump_lp(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                                        char** out_json);

/* Traditional and fractional rates at block length n for b = 1..b_max, with
 * the integrality gap when it is defined. */
FCOLOR_API fcolor_status fcolor_rates(const fcolor_model* model, const fcolor_config* config, unsigned n, int b_max,
                                      char** out_json);

/* Integrality gaps for n = 1..n_max with inversion flags. */
FCOLOR_API fcolor_status fcolor_monotonicity(const fcolor_model* model, const fcolor_config* config, unsigned n_max,
                                             int b_max, char** out_json);

/* b* log chi_f / (log b*^(1/n) + log chi_f), chi_f given as "p/q". */
FCOLOR_API fcolor_status fcolor_conjecture_bound(unsigned n, int b_star, const char* chi_f, double* out_value);

/* Codec simulation on the length-n graph with b replicas per codeword.
 *   coloring_json: coloring document, or NULL for a minimum-entropy coloring;
 *   side:          comma-separated X2 symbols, k n of them (may be NULL);
 *   replicas:      ';'-separated replica blocks of n comma-separated X1
 *                  symbols, k b of them; block k uses replicas k b .. k b + b - 1;
 *   verify:        nonzero runs the exhaustive zero-error check.
 * The transcript lists the codebook, each encoded block, the bitstream, its
 * packed form in hex and the decoded outcomes. */
FCOLOR_API fcolor_status fcolor_codec(const fcolor_model* model, const fcolor_config* config, unsigned n, int b,
                                      const char* coloring_json, const char* side, const char* replicas, int verify,
                                      char** out_json);

/* Packed bitstreams: 8-byte big-endian bit count, then bits MSB first. */
FCOLOR_API fcolor_status fcolor_pack_bits(const char* bits, unsigned char** out_bytes, size_t* out_len);
FCOLOR_API fcolor_status fcolor_unpack_bits(const unsigned char* bytes, size_t len, char** out_bits);

#ifdef __cplusplus
}
#endif

#endif
