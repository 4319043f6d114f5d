// Copyright 2026 The amrstore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * amrstore C API.
 *
 * Every function returns an amr_status; on failure a description of the last
 * error on the calling thread is available from amr_last_error(). Objects are
 * opaque handles released with their matching *_free / *_close function.
 *
 * Functions filling caller buffers take a capacity and report the required
 * size through an out-parameter. When the capacity is too small they return
 * AMR_ERR_BUFFER_TOO_SMALL after storing the required size, so passing a NULL
 * buffer with capacity 0 is a size query.
 */
#ifndef AMRSTORE_AMRSTORE_H
#define AMRSTORE_AMRSTORE_H

#include <stddef.h>
#include <stdint.h>

#if defined(AMRSTORE_BUILDING_LIBRARY)
#define AMR_API __attribute__((visibility("default")))
#else
#define AMR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amr_status {
  AMR_OK = 0,
  AMR_ERR_INVALID_ARGUMENT = 1,
  AMR_ERR_MALFORMED_TREE = 2,
  AMR_ERR_INDEX_OUT_OF_RANGE = 3,
  AMR_ERR_MALFORMED_ENCODING = 4,
  AMR_ERR_LENGTH_MISMATCH = 5,
  AMR_ERR_INVALID_HEADER_WIDTH = 6,
  AMR_ERR_STREAM_TRUNCATED = 7,
  AMR_ERR_CONTEXT_MISMATCH = 8,
  AMR_ERR_ALREADY_EXISTS = 9,
  AMR_ERR_IO = 10,
  AMR_ERR_DUPLICATE_ENTRY = 11,
  AMR_ERR_KIND_MISMATCH = 12,
  AMR_ERR_NOT_FOUND = 13,
  AMR_ERR_CORRUPT_RECORD = 14,
  AMR_ERR_SPEC_INVALID = 15,
  AMR_ERR_TOO_MANY_DOMAINS = 16,
  AMR_ERR_OWNERSHIP_CONFLICT = 17,
  AMR_ERR_INCONSISTENT = 18,
  AMR_ERR_NOT_A_DATABASE = 19,
  AMR_ERR_CONFIG_INVALID = 20,
  AMR_ERR_BUFFER_TOO_SMALL = 21,
  AMR_ERR_INTERNAL = 99
} amr_status;

AMR_API const char* amr_status_name(amr_status status);
/* Message of the last failure on this thread; "" if none. */
AMR_API const char* amr_last_error(void);

/* ---- Domain trees ------------------------------------------------------ */

typedef struct amr_domain amr_domain;

/* Arrays hold one byte per node (0 = false, nonzero = true), breadth-first,
 * children x-fastest. */
AMR_API amr_status amr_domain_create(int dim, const uint8_t* refinement,
                                     const uint8_t* ownership, size_t node_count,
                                     uint32_t domain_id, amr_domain** out);
AMR_API amr_status amr_domain_set_field(amr_domain* domain, const char* name,
                                        const double* values, size_t count);
AMR_API void amr_domain_free(amr_domain* domain);

AMR_API size_t amr_domain_node_count(const amr_domain* domain);
AMR_API size_t amr_domain_leaf_count(const amr_domain* domain);
AMR_API int amr_domain_dim(const amr_domain* domain);
AMR_API uint32_t amr_domain_id(const amr_domain* domain);
AMR_API size_t amr_domain_field_count(const amr_domain* domain);
/* Field names in sorted order; the pointer lives as long as the domain. */
AMR_API const char* amr_domain_field_name(const amr_domain* domain, size_t index);

AMR_API amr_status amr_domain_refinement(const amr_domain* domain, uint8_t* out,
                                         size_t capacity, size_t* count);
AMR_API amr_status amr_domain_ownership(const amr_domain* domain, uint8_t* out,
                                        size_t capacity, size_t* count);
AMR_API amr_status amr_domain_field(const amr_domain* domain, const char* name,
                                    double* out, size_t capacity, size_t* count);

/* AMR_OK when every invariant holds, otherwise AMR_ERR_MALFORMED_TREE with
 * the violated invariant written (NUL-terminated, truncated) to `report`. */
AMR_API amr_status amr_domain_validate(const amr_domain* domain, char* report,
                                       size_t capacity);

typedef struct amr_prune_stats {
  size_t nodes_before;
  size_t nodes_after;
  double removed_fraction;
} amr_prune_stats;

AMR_API amr_status amr_domain_prune(const amr_domain* domain, amr_domain** out,
                                    amr_prune_stats* stats);

/* Plain-text leaf dump: "level x y z size fields..." per leaf. */
AMR_API amr_status amr_domain_export_text(const amr_domain* domain, const char* path,
                                          int owned_only);

/* Nonzero when both domains match bit for bit, field values included. */
AMR_API int amr_domain_equal(const amr_domain* a, const amr_domain* b);

/* ---- Synthetic data ---------------------------------------------------- */

typedef enum amr_rule { AMR_RULE_SHELL = 0, AMR_RULE_RANDOM = 1 } amr_rule;
typedef enum amr_curve { AMR_CURVE_MORTON = 0, AMR_CURVE_HILBERT = 1 } amr_curve;
typedef enum amr_ghosts { AMR_GHOSTS_MINIMAL = 0, AMR_GHOSTS_COARSE_SKELETON = 1 } amr_ghosts;

typedef struct amr_gen_spec {
  int dim;
  int level_min;
  int level_max;
  amr_rule rule;
  double shell_r0;
  double shell_width;
  double p_refine;
  uint64_t seed;
  /* Comma-separated subset of density,pressure,vx,vy,vz; NULL or "" = all. */
  const char* fields;
} amr_gen_spec;

/* Fills in the defaults: dim 3, levels 3..6, shell 0.35/0.05. */
AMR_API void amr_gen_spec_init(amr_gen_spec* spec);

/* The generated global tree as a single domain (id 0) owning every node. */
AMR_API amr_status amr_generate(const amr_gen_spec* spec, amr_domain** out);

/* Splits a fully owned domain into n_domains pieces. `out` must have room
 * for n_domains handles. */
AMR_API amr_status amr_decompose(const amr_domain* global, size_t n_domains,
                                 amr_curve curve, amr_ghosts ghosts, int skeleton_level,
                                 amr_domain** out);

/* Reassembles domains into a single fully owned domain (id 0). */
AMR_API amr_status amr_assemble(const amr_domain* const* domains, size_t count,
                                amr_domain** out);

/* ---- Codecs ------------------------------------------------------------ */

AMR_API amr_status amr_bool_encode(const uint8_t* bits, size_t count, char* out,
                                   size_t capacity, size_t* length);
AMR_API amr_status amr_bool_decode(const char* text, size_t length, uint8_t* out,
                                   size_t capacity, size_t* count);

typedef struct amr_bool_stats {
  size_t raw_bytes;
  size_t bitfield_bytes;
  size_t encoded_bytes;
  double ratio_vs_bitfield;
} amr_bool_stats;

AMR_API amr_status amr_bool_stats_compute(const uint8_t* bits, size_t count,
                                          amr_bool_stats* stats);

/* Serialized delta stream of `values` over the tree given by its refinement
 * array (one byte per node). */
AMR_API amr_status amr_delta_compress(int dim, const uint8_t* refinement, size_t node_count,
                                      const double* values, int header_bits, double factor,
                                      uint8_t* out, size_t capacity, size_t* length);
AMR_API amr_status amr_delta_decompress(int dim, const uint8_t* refinement,
                                        size_t node_count, const uint8_t* data,
                                        size_t length, double* out, size_t capacity);
/* Values of nodes at level <= max_level; *count receives how many. */
AMR_API amr_status amr_delta_decompress_to_level(int dim, const uint8_t* refinement,
                                                 size_t node_count, const uint8_t* data,
                                                 size_t length, int max_level, double* out,
                                                 size_t capacity, size_t* count);

typedef struct amr_delta_stats {
  double compression_rate;
  double mean_removed_zeros;
  size_t groups;
  double throughput_mb_s;
} amr_delta_stats;

/* Compresses one field of `domain` and fills `stats`. */
AMR_API amr_status amr_domain_field_stats(const amr_domain* domain, const char* name,
                                          int header_bits, double factor,
                                          amr_delta_stats* stats);

/* ---- Databases --------------------------------------------------------- */

typedef struct amr_db amr_db;
typedef enum amr_db_kind { AMR_DB_CHECKPOINT = 0, AMR_DB_POSTPROC = 1 } amr_db_kind;

typedef struct amr_db_params {
  amr_db_kind kind;
  uint64_t max_file_size;
  uint32_t ncf;
  /* Comma-separated field names kept in post-processing objects; NULL = all. */
  const char* field_selection;
  int header_bits;
  double factor;
  int durable;
} amr_db_params;

/* Defaults: postproc, 2 GiB files, ncf 1, all fields, k = 4, factor 1, durable. */
AMR_API void amr_db_params_init(amr_db_params* params);

AMR_API amr_status amr_db_create(const char* path, const amr_db_params* params,
                                 amr_db** out);
AMR_API amr_status amr_db_open(const char* path, amr_db** out);
AMR_API void amr_db_close(amr_db* db);

AMR_API amr_db_kind amr_db_get_kind(const amr_db* db);
AMR_API uint32_t amr_db_ncf(const amr_db* db);

AMR_API amr_status amr_db_write_raw(amr_db* db, uint32_t context_id, uint32_t domain_id,
                                    const void* data, size_t length);
/* Writes the domain as a self-describing object under its own domain id. */
AMR_API amr_status amr_db_write_domain(amr_db* db, uint32_t context_id,
                                       const amr_domain* domain);
AMR_API amr_status amr_db_commit(amr_db* db);

AMR_API amr_status amr_db_contexts(const amr_db* db, uint32_t* out, size_t capacity,
                                   size_t* count);
AMR_API amr_status amr_db_domains(const amr_db* db, uint32_t context_id, uint32_t* out,
                                  size_t capacity, size_t* count);
AMR_API amr_status amr_db_read_raw(const amr_db* db, uint32_t context_id,
                                   uint32_t domain_id, void* out, size_t capacity,
                                   size_t* length);
AMR_API amr_status amr_db_read_domain(const amr_db* db, uint32_t context_id,
                                      uint32_t domain_id, amr_domain** out);
AMR_API amr_status amr_db_file_count(const amr_db* db, size_t* count);

/* ---- Checkpoint state -------------------------------------------------- */

AMR_API amr_status amr_state_serialize(const amr_domain* domain, uint64_t step,
                                       uint32_t n_domains, uint8_t* out, size_t capacity,
                                       size_t* length);
AMR_API amr_status amr_state_deserialize(const uint8_t* data, size_t length,
                                         amr_domain** out, uint64_t* step,
                                         uint32_t* n_domains);

/* ---- Benchmark --------------------------------------------------------- */

typedef enum amr_bench_mode { AMR_BENCH_LEGACY = 0, AMR_BENCH_AGGREGATED = 1 } amr_bench_mode;

typedef struct amr_bench_config {
  size_t n_workers;
  amr_bench_mode mode;
  uint32_t ncf;
  size_t bytes_per_worker;
  size_t repetitions;
  uint64_t max_file_size;
  const char* output;
  uint64_t seed;
  uint32_t stripe_count;
  uint64_t stripe_size;
} amr_bench_config;

typedef struct amr_bench_summary {
  size_t n_workers;
  uint32_t ncf;
  size_t runs;
  double mean_seconds;
  uint64_t bytes;
  double mean_gb_per_s;
  double stddev_gb_per_s;
  size_t file_count;
  int aggregated;
} amr_bench_summary;

typedef struct amr_bench_report amr_bench_report;

/* Defaults: 64 workers, legacy, ncf 16, 1 MiB each, 5 repetitions. */
AMR_API void amr_bench_config_init(amr_bench_config* config);
AMR_API amr_status amr_bench_report_create(amr_bench_report** out);
AMR_API void amr_bench_report_free(amr_bench_report* report);
/* Runs one configuration and appends its rows and summary to `report`. */
AMR_API amr_status amr_bench_run(const amr_bench_config* config, amr_bench_report* report);
AMR_API size_t amr_bench_summary_count(const amr_bench_report* report);
AMR_API amr_status amr_bench_summary_get(const amr_bench_report* report, size_t index,
                                         amr_bench_summary* out);
AMR_API amr_status amr_bench_emit_csv(const amr_bench_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* AMRSTORE_AMRSTORE_H */
