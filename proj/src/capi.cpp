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

#include "amrstore/amrstore.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "amrstore/bench.hpp"
#include "amrstore/boolcodec.hpp"
#include "amrstore/container.hpp"
#include "amrstore/deltacodec.hpp"
#include "amrstore/error.hpp"
#include "amrstore/export.hpp"
#include "amrstore/prune.hpp"
#include "amrstore/state.hpp"
#include "amrstore/synthgen.hpp"

using namespace amrstore;

struct amr_domain {
  DomainTree tree;
  std::vector<std::string> names;  // stable storage for amr_domain_field_name

  void refresh_names() {
    names.clear();
    for (const auto& [name, values] : tree.fields) names.push_back(name);
  }
};

struct amr_db {
  Database db;
  DeltaOptions delta;
};

struct amr_bench_report {
  BenchReport report;
};

namespace {

thread_local std::string g_last_error;

amr_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return AMR_ERR_INVALID_ARGUMENT;
    case ErrorCode::kMalformedTree: return AMR_ERR_MALFORMED_TREE;
    case ErrorCode::kIndexOutOfRange: return AMR_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::kMalformedEncoding: return AMR_ERR_MALFORMED_ENCODING;
    case ErrorCode::kLengthMismatch: return AMR_ERR_LENGTH_MISMATCH;
    case ErrorCode::kInvalidHeaderWidth: return AMR_ERR_INVALID_HEADER_WIDTH;
    case ErrorCode::kStreamTruncated: return AMR_ERR_STREAM_TRUNCATED;
    case ErrorCode::kContextMismatch: return AMR_ERR_CONTEXT_MISMATCH;
    case ErrorCode::kAlreadyExists: return AMR_ERR_ALREADY_EXISTS;
    case ErrorCode::kIoFailure: return AMR_ERR_IO;
    case ErrorCode::kDuplicateEntry: return AMR_ERR_DUPLICATE_ENTRY;
    case ErrorCode::kKindMismatch: return AMR_ERR_KIND_MISMATCH;
    case ErrorCode::kNotFound: return AMR_ERR_NOT_FOUND;
    case ErrorCode::kCorruptRecord: return AMR_ERR_CORRUPT_RECORD;
    case ErrorCode::kSpecInvalid: return AMR_ERR_SPEC_INVALID;
    case ErrorCode::kTooManyDomains: return AMR_ERR_TOO_MANY_DOMAINS;
    case ErrorCode::kOwnershipConflict: return AMR_ERR_OWNERSHIP_CONFLICT;
    case ErrorCode::kInconsistent: return AMR_ERR_INCONSISTENT;
    case ErrorCode::kNotADatabase: return AMR_ERR_NOT_A_DATABASE;
    case ErrorCode::kConfigInvalid: return AMR_ERR_CONFIG_INVALID;
  }
  return AMR_ERR_INTERNAL;
}

amr_status fail(amr_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <typename Fn>
amr_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AMR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AMR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AMR_ERR_INTERNAL, "unknown error");
  }
}

amr_status null_arg(const char* what) {
  return fail(AMR_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL");
}

template <typename T, typename Src>
amr_status fill(const Src& src, T* out, std::size_t capacity, std::size_t* count) {
  if (count) *count = src.size();
  if (src.size() > capacity) {
    return fail(AMR_ERR_BUFFER_TOO_SMALL, "need room for " + std::to_string(src.size()));
  }
  if (out == nullptr && !src.empty()) return null_arg("output buffer");
  for (std::size_t i = 0; i < src.size(); ++i) out[i] = static_cast<T>(src[i]);
  return AMR_OK;
}

BitVector to_bits(const std::uint8_t* bytes, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = bytes[i] != 0;
  return v;
}

std::vector<std::string> split_names(const char* csv) {
  std::vector<std::string> out;
  if (csv == nullptr) return out;
  std::istringstream is(csv);
  std::string name;
  while (std::getline(is, name, ',')) {
    if (!name.empty()) out.push_back(name);
  }
  return out;
}

amr_domain* wrap(DomainTree dt) {
  auto* d = new amr_domain{std::move(dt), {}};
  d->refresh_names();
  return d;
}

AmrTree tree_from(int dim, const std::uint8_t* refinement, std::size_t n) {
  if (refinement == nullptr && n > 0) {
    throw Error(ErrorCode::kInvalidArgument, "refinement is NULL");
  }
  return AmrTree::build(dim, to_bits(refinement, n));
}

GlobalTree as_global(const amr_domain* d) {
  return assemble(std::span<const DomainTree>(&d->tree, 1));
}

}  // namespace

extern "C" {

const char* amr_status_name(amr_status status) {
  switch (status) {
    case AMR_OK: return "OK";
    case AMR_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case AMR_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::kConfigInvalid); ++c) {
    if (to_status(static_cast<ErrorCode>(c)) == status) {
      return error_code_name(static_cast<ErrorCode>(c));
    }
  }
  return "Unknown";
}

const char* amr_last_error(void) { return g_last_error.c_str(); }

amr_status amr_domain_create(int dim, const uint8_t* refinement, const uint8_t* ownership,
                             size_t node_count, uint32_t domain_id, amr_domain** out) {
  if (!out) return null_arg("out");
  if (!ownership && node_count > 0) return null_arg("ownership");
  return guarded([&] {
    DomainTree dt;
    dt.tree = tree_from(dim, refinement, node_count);
    dt.ownership = to_bits(ownership, node_count);
    dt.domain_id = domain_id;
    *out = wrap(std::move(dt));
    return AMR_OK;
  });
}

amr_status amr_domain_set_field(amr_domain* domain, const char* name, const double* values,
                                size_t count) {
  if (!domain) return null_arg("domain");
  if (!name || !*name) return null_arg("name");
  if (!values && count > 0) return null_arg("values");
  return guarded([&] {
    if (count != domain->tree.tree.node_count()) {
      throw Error(ErrorCode::kLengthMismatch,
                  std::to_string(count) + " values for " +
                      std::to_string(domain->tree.tree.node_count()) + " nodes");
    }
    domain->tree.fields[name] = std::vector<double>(values, values + count);
    domain->refresh_names();
    return AMR_OK;
  });
}

void amr_domain_free(amr_domain* domain) { delete domain; }

size_t amr_domain_node_count(const amr_domain* d) { return d ? d->tree.tree.node_count() : 0; }
size_t amr_domain_leaf_count(const amr_domain* d) { return d ? d->tree.tree.leaf_count() : 0; }
int amr_domain_dim(const amr_domain* d) { return d ? d->tree.tree.dim() : 0; }
uint32_t amr_domain_id(const amr_domain* d) { return d ? d->tree.domain_id : 0; }
size_t amr_domain_field_count(const amr_domain* d) { return d ? d->names.size() : 0; }

const char* amr_domain_field_name(const amr_domain* d, size_t index) {
  if (!d || index >= d->names.size()) return nullptr;
  return d->names[index].c_str();
}

amr_status amr_domain_refinement(const amr_domain* d, uint8_t* out, size_t capacity,
                                 size_t* count) {
  if (!d) return null_arg("domain");
  return guarded([&] { return fill(d->tree.tree.refinement(), out, capacity, count); });
}

amr_status amr_domain_ownership(const amr_domain* d, uint8_t* out, size_t capacity,
                                size_t* count) {
  if (!d) return null_arg("domain");
  return guarded([&] { return fill(d->tree.ownership, out, capacity, count); });
}

amr_status amr_domain_field(const amr_domain* d, const char* name, double* out,
                            size_t capacity, size_t* count) {
  if (!d) return null_arg("domain");
  if (!name) return null_arg("name");
  return guarded([&] {
    auto it = d->tree.fields.find(name);
    if (it == d->tree.fields.end()) {
      throw Error(ErrorCode::kNotFound, std::string("no field '") + name + "'");
    }
    return fill(it->second, out, capacity, count);
  });
}

amr_status amr_domain_validate(const amr_domain* d, char* report, size_t capacity) {
  if (!d) return null_arg("domain");
  return guarded([&] {
    auto v = validate_domain(d->tree);
    std::string text;
    if (v) {
      text = v->invariant;
      if (v->node) text += " at node " + std::to_string(*v->node);
      text += ": " + v->detail;
    }
    if (report && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, text.size());
      std::memcpy(report, text.data(), n);
      report[n] = '\0';
    }
    return v ? fail(AMR_ERR_MALFORMED_TREE, text) : AMR_OK;
  });
}

amr_status amr_domain_prune(const amr_domain* d, amr_domain** out, amr_prune_stats* stats) {
  if (!d) return null_arg("domain");
  if (!out) return null_arg("out");
  return guarded([&] {
    PruneResult r = prune_domain(d->tree);
    if (stats) {
      stats->nodes_before = r.stats.nodes_before;
      stats->nodes_after = r.stats.nodes_after;
      stats->removed_fraction = r.stats.removed_fraction;
    }
    *out = wrap(std::move(r.domain));
    return AMR_OK;
  });
}

amr_status amr_domain_export_text(const amr_domain* d, const char* path, int owned_only) {
  if (!d) return null_arg("domain");
  if (!path) return null_arg("path");
  return guarded([&] {
    export_leaves(d->tree, std::filesystem::path(path), owned_only != 0);
    return AMR_OK;
  });
}

int amr_domain_equal(const amr_domain* a, const amr_domain* b) {
  if (!a || !b) return 0;
  return a->tree.tree == b->tree.tree && a->tree.ownership == b->tree.ownership &&
         bit_equal(a->tree.fields, b->tree.fields);
}

void amr_gen_spec_init(amr_gen_spec* spec) {
  if (!spec) return;
  spec->dim = 3;
  spec->level_min = 3;
  spec->level_max = 6;
  spec->rule = AMR_RULE_SHELL;
  spec->shell_r0 = 0.35;
  spec->shell_width = 0.05;
  spec->p_refine = 0.3;
  spec->seed = 1;
  spec->fields = nullptr;
}

amr_status amr_generate(const amr_gen_spec* spec, amr_domain** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] {
    GenSpec g;
    g.dim = spec->dim;
    g.level_min = spec->level_min;
    g.level_max = spec->level_max;
    if (spec->rule == AMR_RULE_SHELL) {
      g.rule = ShellRule{spec->shell_r0, spec->shell_width};
    } else if (spec->rule == AMR_RULE_RANDOM) {
      g.rule = RandomRule{spec->p_refine, spec->seed};
    } else {
      throw Error(ErrorCode::kSpecInvalid, "unknown refinement rule");
    }
    g.fields = split_names(spec->fields);
    *out = wrap(as_single_domain(generate_global(g)));
    return AMR_OK;
  });
}

amr_status amr_decompose(const amr_domain* global, size_t n_domains, amr_curve curve,
                         amr_ghosts ghosts, int skeleton_level, amr_domain** out) {
  if (!global) return null_arg("global");
  if (!out) return null_arg("out");
  return guarded([&] {
    const GlobalTree g = as_global(global);
    const GhostPolicy policy = ghosts == AMR_GHOSTS_COARSE_SKELETON
                                   ? GhostPolicy::coarse_skeleton(skeleton_level)
                                   : GhostPolicy::minimal();
    auto parts = decompose(g, n_domains,
                           curve == AMR_CURVE_HILBERT ? Curve::kHilbert : Curve::kMorton,
                           policy);
    for (std::size_t i = 0; i < parts.size(); ++i) out[i] = wrap(std::move(parts[i]));
    return AMR_OK;
  });
}

amr_status amr_assemble(const amr_domain* const* domains, size_t count, amr_domain** out) {
  if (!domains) return null_arg("domains");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::vector<DomainTree> parts;
    parts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!domains[i]) throw Error(ErrorCode::kInvalidArgument, "NULL domain in list");
      parts.push_back(domains[i]->tree);
    }
    *out = wrap(as_single_domain(assemble(parts)));
    return AMR_OK;
  });
}

amr_status amr_bool_encode(const uint8_t* bits, size_t count, char* out, size_t capacity,
                           size_t* length) {
  if (!bits && count > 0) return null_arg("bits");
  return guarded([&] {
    const std::string s = encode_bools(to_bits(bits, count));
    return fill(s, out, capacity, length);
  });
}

amr_status amr_bool_decode(const char* text, size_t length, uint8_t* out, size_t capacity,
                           size_t* count) {
  if (!text && length > 0) return null_arg("text");
  return guarded([&] {
    const BitVector v = decode_bools(std::string_view(text ? text : "", length));
    return fill(v, out, capacity, count);
  });
}

amr_status amr_bool_stats_compute(const uint8_t* bits, size_t count, amr_bool_stats* stats) {
  if (!bits && count > 0) return null_arg("bits");
  if (!stats) return null_arg("stats");
  return guarded([&] {
    const BoolCodecStats s = bool_stats(to_bits(bits, count));
    *stats = amr_bool_stats{s.raw_bytes, s.bitfield_bytes, s.encoded_bytes, s.ratio_vs_bitfield};
    return AMR_OK;
  });
}

amr_status amr_delta_compress(int dim, const uint8_t* refinement, size_t node_count,
                              const double* values, int header_bits, double factor,
                              uint8_t* out, size_t capacity, size_t* length) {
  if (!values && node_count > 0) return null_arg("values");
  return guarded([&] {
    const AmrTree tree = tree_from(dim, refinement, node_count);
    const auto cf = compress_field(tree, std::span(values, node_count),
                                   DeltaOptions{header_bits, factor});
    return fill(serialize(cf), out, capacity, length);
  });
}

amr_status amr_delta_decompress(int dim, const uint8_t* refinement, size_t node_count,
                                const uint8_t* data, size_t length, double* out,
                                size_t capacity) {
  if (!data && length > 0) return null_arg("data");
  return guarded([&] {
    const AmrTree tree = tree_from(dim, refinement, node_count);
    std::size_t used = 0;
    const auto cf = deserialize_field(std::span(data, length), &used);
    return fill(decompress_field(cf, tree), out, capacity, nullptr);
  });
}

amr_status amr_delta_decompress_to_level(int dim, const uint8_t* refinement,
                                         size_t node_count, const uint8_t* data,
                                         size_t length, int max_level, double* out,
                                         size_t capacity, size_t* count) {
  if (!data && length > 0) return null_arg("data");
  return guarded([&] {
    const AmrTree tree = tree_from(dim, refinement, node_count);
    const auto cf = deserialize_field(std::span(data, length));
    return fill(decompress_to_level(cf, tree, max_level), out, capacity, count);
  });
}

amr_status amr_domain_field_stats(const amr_domain* d, const char* name, int header_bits,
                                  double factor, amr_delta_stats* stats) {
  if (!d) return null_arg("domain");
  if (!name) return null_arg("name");
  if (!stats) return null_arg("stats");
  return guarded([&] {
    auto it = d->tree.fields.find(name);
    if (it == d->tree.fields.end()) {
      throw Error(ErrorCode::kNotFound, std::string("no field '") + name + "'");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto cf = compress_field(d->tree.tree, it->second, DeltaOptions{header_bits, factor});
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed = std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
    const DeltaStats s = delta_stats(cf, it->second.size() * sizeof(double), elapsed);
    *stats = amr_delta_stats{s.compression_rate, s.mean_removed_zeros, s.groups,
                             s.throughput_mb_s};
    return AMR_OK;
  });
}

void amr_db_params_init(amr_db_params* p) {
  if (!p) return;
  p->kind = AMR_DB_POSTPROC;
  p->max_file_size = kDefaultMaxFileSize;
  p->ncf = 1;
  p->field_selection = nullptr;
  p->header_bits = 4;
  p->factor = 1.0;
  p->durable = 1;
}

amr_status amr_db_create(const char* path, const amr_db_params* params, amr_db** out) {
  if (!path) return null_arg("path");
  if (!params) return null_arg("params");
  if (!out) return null_arg("out");
  return guarded([&] {
    DbParams p;
    p.kind = params->kind == AMR_DB_CHECKPOINT ? DbKind::kCheckpoint : DbKind::kPostproc;
    p.max_file_size = params->max_file_size;
    p.ncf = params->ncf;
    if (params->field_selection) p.field_selection = split_names(params->field_selection);
    p.durable = params->durable != 0;
    const DeltaOptions delta{params->header_bits, params->factor};
    if (delta.header_bits < 1 || delta.header_bits > 6) {
      throw Error(ErrorCode::kInvalidHeaderWidth, "header width must be in [1, 6]");
    }
    *out = new amr_db{Database::create(path, p), delta};
    return AMR_OK;
  });
}

amr_status amr_db_open(const char* path, amr_db** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new amr_db{Database::open(path), DeltaOptions{}};
    return AMR_OK;
  });
}

void amr_db_close(amr_db* db) { delete db; }

amr_db_kind amr_db_get_kind(const amr_db* db) {
  return db && db->db.params().kind == DbKind::kCheckpoint ? AMR_DB_CHECKPOINT
                                                           : AMR_DB_POSTPROC;
}

uint32_t amr_db_ncf(const amr_db* db) { return db ? db->db.params().ncf : 0; }

amr_status amr_db_write_raw(amr_db* db, uint32_t context_id, uint32_t domain_id,
                            const void* data, size_t length) {
  if (!db) return null_arg("db");
  if (!data && length > 0) return null_arg("data");
  return guarded([&] {
    db->db.write_raw(context_id, domain_id,
                     std::span(static_cast<const std::uint8_t*>(data), length));
    return AMR_OK;
  });
}

amr_status amr_db_write_domain(amr_db* db, uint32_t context_id, const amr_domain* d) {
  if (!db) return null_arg("db");
  if (!d) return null_arg("domain");
  return guarded([&] {
    db->db.write_domain(context_id, d->tree, db->delta);
    return AMR_OK;
  });
}

amr_status amr_db_commit(amr_db* db) {
  if (!db) return null_arg("db");
  return guarded([&] {
    db->db.commit();
    return AMR_OK;
  });
}

amr_status amr_db_contexts(const amr_db* db, uint32_t* out, size_t capacity, size_t* count) {
  if (!db) return null_arg("db");
  return guarded([&] { return fill(db->db.list_contexts(), out, capacity, count); });
}

amr_status amr_db_domains(const amr_db* db, uint32_t context_id, uint32_t* out,
                          size_t capacity, size_t* count) {
  if (!db) return null_arg("db");
  return guarded([&] { return fill(db->db.list_domains(context_id), out, capacity, count); });
}

amr_status amr_db_read_raw(const amr_db* db, uint32_t context_id, uint32_t domain_id,
                           void* out, size_t capacity, size_t* length) {
  if (!db) return null_arg("db");
  return guarded([&] {
    const IndexEntry& e = db->db.find(context_id, domain_id);
    if (length) *length = static_cast<std::size_t>(e.length);
    if (e.length > capacity) {
      return fail(AMR_ERR_BUFFER_TOO_SMALL, "need " + std::to_string(e.length) + " bytes");
    }
    const auto bytes = db->db.read_raw(context_id, domain_id);
    return fill(bytes, static_cast<std::uint8_t*>(out), capacity, length);
  });
}

amr_status amr_db_read_domain(const amr_db* db, uint32_t context_id, uint32_t domain_id,
                              amr_domain** out) {
  if (!db) return null_arg("db");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(db->db.read_domain(context_id, domain_id));
    return AMR_OK;
  });
}

amr_status amr_db_file_count(const amr_db* db, size_t* count) {
  if (!db) return null_arg("db");
  if (!count) return null_arg("count");
  return guarded([&] {
    *count = db->db.file_count();
    return AMR_OK;
  });
}

amr_status amr_state_serialize(const amr_domain* d, uint64_t step, uint32_t n_domains,
                               uint8_t* out, size_t capacity, size_t* length) {
  if (!d) return null_arg("domain");
  return guarded([&] {
    return fill(serialize_state(CheckpointState{d->tree, step, n_domains}), out, capacity,
                length);
  });
}

amr_status amr_state_deserialize(const uint8_t* data, size_t length, amr_domain** out,
                                 uint64_t* step, uint32_t* n_domains) {
  if (!data && length > 0) return null_arg("data");
  if (!out) return null_arg("out");
  return guarded([&] {
    CheckpointState s = deserialize_state(std::span(data, length));
    if (step) *step = s.step;
    if (n_domains) *n_domains = s.n_domains;
    *out = wrap(std::move(s.domain));
    return AMR_OK;
  });
}

void amr_bench_config_init(amr_bench_config* c) {
  if (!c) return;
  const BenchConfig d;
  c->n_workers = d.n_workers;
  c->mode = AMR_BENCH_LEGACY;
  c->ncf = d.ncf;
  c->bytes_per_worker = d.bytes_per_worker;
  c->repetitions = d.repetitions;
  c->max_file_size = d.max_file_size;
  c->output = nullptr;
  c->seed = d.seed;
  c->stripe_count = 0;
  c->stripe_size = 0;
}

amr_status amr_bench_report_create(amr_bench_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new amr_bench_report{};
    return AMR_OK;
  });
}

void amr_bench_report_free(amr_bench_report* report) { delete report; }

amr_status amr_bench_run(const amr_bench_config* c, amr_bench_report* report) {
  if (!c) return null_arg("config");
  if (!report) return null_arg("report");
  return guarded([&] {
    BenchConfig cfg;
    cfg.n_workers = c->n_workers;
    cfg.mode = c->mode == AMR_BENCH_AGGREGATED ? BenchMode::kAggregated : BenchMode::kLegacy;
    cfg.ncf = c->ncf;
    cfg.bytes_per_worker = c->bytes_per_worker;
    cfg.repetitions = c->repetitions;
    cfg.max_file_size = c->max_file_size;
    cfg.output = c->output ? c->output : "";
    cfg.seed = c->seed;
    cfg.stripe_count = c->stripe_count;
    cfg.stripe_size = c->stripe_size;
    run_write_bench(cfg, report->report);
    return AMR_OK;
  });
}

size_t amr_bench_summary_count(const amr_bench_report* report) {
  return report ? report->report.summaries.size() : 0;
}

amr_status amr_bench_summary_get(const amr_bench_report* report, size_t index,
                                 amr_bench_summary* out) {
  if (!report) return null_arg("report");
  if (!out) return null_arg("out");
  if (index >= report->report.summaries.size()) {
    return fail(AMR_ERR_INDEX_OUT_OF_RANGE, "no summary " + std::to_string(index));
  }
  const BenchSummary& s = report->report.summaries[index];
  *out = amr_bench_summary{s.n_workers,     s.ncf,           s.runs,
                           s.mean_seconds,  s.bytes,         s.mean_gb_per_s,
                           s.stddev_gb_per_s, s.file_count, s.mode == "aggregated"};
  return AMR_OK;
}

amr_status amr_bench_emit_csv(const amr_bench_report* report, const char* path) {
  if (!report) return null_arg("report");
  if (!path) return null_arg("path");
  return guarded([&] {
    emit_csv(report->report, path);
    return AMR_OK;
  });
}

}  // extern "C"
