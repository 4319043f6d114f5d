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

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amrstore/amrstore.h"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(amr_status s) {
  if (s != AMR_OK) {
    const std::string name = amr_status_name(s);
    const std::string detail = amr_last_error();
    throw RuntimeError(detail.rfind(name, 0) == 0 ? detail : name + ": " + detail);
  }
}

struct DomainFree {
  void operator()(amr_domain* d) const { amr_domain_free(d); }
};
struct DbClose {
  void operator()(amr_db* db) const { amr_db_close(db); }
};
struct ReportFree {
  void operator()(amr_bench_report* r) const { amr_bench_report_free(r); }
};
using Domain = std::unique_ptr<amr_domain, DomainFree>;
using Db = std::unique_ptr<amr_db, DbClose>;
using Report = std::unique_ptr<amr_bench_report, ReportFree>;

bool g_verbose = false;

void note(const std::string& msg) {
  if (g_verbose) std::cerr << msg << '\n';
}

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Calls a C API getter twice: once for the size, once for the data.
template <typename T, typename Fn>
std::vector<T> fetch(Fn&& fn) {
  std::size_t n = 0;
  amr_status s = fn(static_cast<T*>(nullptr), 0, &n);
  if (s == AMR_OK) return {};
  if (s != AMR_ERR_BUFFER_TOO_SMALL) check(s);
  std::vector<T> out(n);
  check(fn(out.data(), out.size(), &n));
  return out;
}

Db open_db(const std::string& path) {
  amr_db* db = nullptr;
  check(amr_db_open(path.c_str(), &db));
  return Db(db);
}

struct DbFlags {
  std::uint64_t max_file_size = 2ull << 30;
  std::uint32_t ncf = 1;
  std::string fields;
  int header_bits = 4;
  double factor = 1.0;
  bool no_sync = false;
};

void add_db_flags(CLI::App* cmd, DbFlags& f) {
  cmd->add_option("--max-file-size", f.max_file_size, "Data file size limit in bytes")
      ->capture_default_str();
  cmd->add_option("--ncf", f.ncf, "Contributors per data file")->capture_default_str();
  cmd->add_option("--k", f.header_bits, "Leading-zero header width in bits")
      ->capture_default_str();
  cmd->add_option("--factor", f.factor, "Father prediction factor")->capture_default_str();
  cmd->add_flag("--no-sync", f.no_sync, "Skip fsync on commit");
}

Db create_db(const std::string& path, amr_db_kind kind, const DbFlags& f) {
  amr_db_params p;
  amr_db_params_init(&p);
  p.kind = kind;
  p.max_file_size = f.max_file_size;
  p.ncf = f.ncf;
  p.field_selection = f.fields.empty() ? nullptr : f.fields.c_str();
  p.header_bits = f.header_bits;
  p.factor = f.factor;
  p.durable = f.no_sync ? 0 : 1;
  amr_db* db = nullptr;
  check(amr_db_create(path.c_str(), &p, &db));
  return Db(db);
}

std::vector<std::uint32_t> contexts_of(const amr_db* db) {
  return fetch<std::uint32_t>(
      [&](std::uint32_t* o, std::size_t c, std::size_t* n) {
        return amr_db_contexts(db, o, c, n);
      });
}

std::vector<std::uint32_t> domains_of(const amr_db* db, std::uint32_t ctx) {
  return fetch<std::uint32_t>([&](std::uint32_t* o, std::size_t c, std::size_t* n) {
    return amr_db_domains(db, ctx, o, c, n);
  });
}

std::uint32_t pick_context(const amr_db* db, std::optional<std::uint32_t> requested) {
  if (requested) return *requested;
  const auto ctxs = contexts_of(db);
  if (ctxs.empty()) throw RuntimeError("database has no contexts");
  return ctxs.front();
}

std::vector<Domain> read_domains(const amr_db* db, std::uint32_t ctx) {
  std::vector<Domain> out;
  for (std::uint32_t id : domains_of(db, ctx)) {
    amr_domain* d = nullptr;
    check(amr_db_read_domain(db, ctx, id, &d));
    out.emplace_back(d);
  }
  return out;
}

void write_domains(amr_db* db, std::uint32_t ctx, const std::vector<Domain>& domains) {
  for (const auto& d : domains) check(amr_db_write_domain(db, ctx, d.get()));
  check(amr_db_commit(db));
}

std::vector<std::uint8_t> raw_of(const amr_db* db, std::uint32_t ctx, std::uint32_t dom) {
  return fetch<std::uint8_t>([&](std::uint8_t* o, std::size_t c, std::size_t* n) {
    return amr_db_read_raw(db, ctx, dom, o, c, n);
  });
}

std::vector<std::uint8_t> state_of(const amr_domain* d, std::uint64_t step, std::uint32_t n) {
  return fetch<std::uint8_t>([&](std::uint8_t* o, std::size_t c, std::size_t* len) {
    return amr_state_serialize(d, step, n, o, c, len);
  });
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())) ||
      !out.flush()) {
    throw RuntimeError("IoFailure: cannot write " + path);
  }
}

// Plain columns for the terminal, same cells as the CSV.
void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - r[i].size(), ' ') + r[i];
    }
    std::cout << line << '\n';
  }
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += '\n';
  }
  return out;
}

// ---- generation ----

struct GenFlags {
  int dim = 3;
  int level_min = 3;
  int level_max = 6;
  std::vector<double> shell;
  std::optional<double> random;
  std::string fields;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--dim", g.dim, "Dimension (1, 2 or 3)")->capture_default_str();
  cmd->add_option("--level-min", g.level_min, "Uniform refinement depth")
      ->capture_default_str();
  cmd->add_option("--level-max", g.level_max, "Deepest refinement level")
      ->capture_default_str();
  auto* shell = cmd->add_option("--shell", g.shell, "Shell rule: radius and width")
                    ->expected(2)
                    ->type_name("R0 W");
  auto* random = cmd->add_option("--random", g.random, "Random rule: refinement probability");
  shell->excludes(random);
  cmd->add_option("--fields", g.fields, "Comma-separated field subset");
}

void validate_gen(const GenFlags& g) {
  if (g.dim < 1 || g.dim > 3) throw UsageError("--dim must be 1, 2 or 3");
  if (g.level_min < 0) throw UsageError("--level-min must be >= 0");
  if (g.level_max < g.level_min) throw UsageError("--level-max must be >= --level-min");
  if (!g.shell.empty() && (g.shell[0] <= 0.0 || g.shell[1] <= 0.0 || g.shell[1] >= 1.0)) {
    throw UsageError("--shell needs R0 > 0 and 0 < W < 1");
  }
  if (g.random && (*g.random < 0.0 || *g.random > 1.0)) {
    throw UsageError("--random must be in [0, 1]");
  }
}

Domain generate(const GenFlags& g, std::uint64_t seed, double r0_shift = 0.0) {
  amr_gen_spec spec;
  amr_gen_spec_init(&spec);
  spec.dim = g.dim;
  spec.level_min = g.level_min;
  spec.level_max = g.level_max;
  spec.seed = seed;
  if (g.random) {
    spec.rule = AMR_RULE_RANDOM;
    spec.p_refine = *g.random;
  } else if (!g.shell.empty()) {
    spec.shell_r0 = g.shell[0];
    spec.shell_width = g.shell[1];
  }
  spec.shell_r0 += r0_shift;
  spec.fields = g.fields.empty() ? nullptr : g.fields.c_str();
  amr_domain* d = nullptr;
  check(amr_generate(&spec, &d));
  return Domain(d);
}

// ---- decomposition ----

struct SplitFlags {
  std::size_t domains = 8;
  std::string curve = "morton";
  std::string ghosts = "minimal";
  int skeleton_level = 3;
};

void add_split_flags(CLI::App* cmd, SplitFlags& s) {
  cmd->add_option("--domains", s.domains, "Number of domains")->capture_default_str();
  cmd->add_option("--curve", s.curve, "Space-filling curve")
      ->check(CLI::IsMember({"morton", "hilbert"}))
      ->capture_default_str();
  cmd->add_option("--ghosts", s.ghosts, "Ghost policy")
      ->check(CLI::IsMember({"minimal", "skeleton"}))
      ->capture_default_str();
  cmd->add_option("--skeleton-level", s.skeleton_level, "Coarse skeleton depth")
      ->capture_default_str();
}

std::vector<Domain> split(const amr_domain* global, const SplitFlags& s) {
  if (s.domains < 1) throw UsageError("--domains must be >= 1");
  if (s.skeleton_level < 0) throw UsageError("--skeleton-level must be >= 0");
  std::vector<amr_domain*> raw(s.domains, nullptr);
  check(amr_decompose(global, s.domains, s.curve == "morton" ? AMR_CURVE_MORTON : AMR_CURVE_HILBERT,
                      s.ghosts == "skeleton" ? AMR_GHOSTS_COARSE_SKELETON : AMR_GHOSTS_MINIMAL,
                      s.skeleton_level, raw.data()));
  std::vector<Domain> out;
  for (auto* d : raw) out.emplace_back(d);
  return out;
}

Domain assemble_all(const std::vector<Domain>& parts) {
  std::vector<const amr_domain*> raw;
  for (const auto& d : parts) raw.push_back(d.get());
  amr_domain* out = nullptr;
  check(amr_assemble(raw.data(), raw.size(), &out));
  return Domain(out);
}

// ---- stats ----

std::vector<std::uint8_t> bools_of(const amr_domain* d, bool ownership) {
  return fetch<std::uint8_t>([&](std::uint8_t* o, std::size_t c, std::size_t* n) {
    return ownership ? amr_domain_ownership(d, o, c, n) : amr_domain_refinement(d, o, c, n);
  });
}

double bool_ratio(const std::vector<std::uint8_t>& bits) {
  amr_bool_stats s;
  check(amr_bool_stats_compute(bits.data(), bits.size(), &s));
  return s.ratio_vs_bitfield;
}

std::vector<std::vector<std::string>> stats_table(const amr_db* db, std::uint32_t ctx, int k,
                                                  double factor, bool timing) {
  std::vector<std::vector<std::string>> rows = {
      {"domain", "nodes", "leaves", "refinement_ratio", "ownership_ratio", "field", "rate",
       "mean_removed_zeros", "groups", "throughput_mb_s"}};
  double sum_ref = 0.0;
  double sum_own = 0.0;
  std::size_t n = 0;
  for (const auto& d : read_domains(db, ctx)) {
    std::vector<std::string> base = {std::to_string(amr_domain_id(d.get())),
                                     std::to_string(amr_domain_node_count(d.get())),
                                     std::to_string(amr_domain_leaf_count(d.get())), "", ""};
    if (amr_domain_node_count(d.get()) > 1) {
      const double ref = bool_ratio(bools_of(d.get(), false));
      const double own = bool_ratio(bools_of(d.get(), true));
      sum_ref += ref;
      sum_own += own;
      ++n;
      base[3] = fmt(ref);
      base[4] = fmt(own);
    }
    const std::size_t nf = amr_domain_field_count(d.get());
    if (nf == 0) {
      auto row = base;
      row.insert(row.end(), {"", "", "", "", ""});
      rows.push_back(row);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      const char* name = amr_domain_field_name(d.get(), f);
      amr_delta_stats s;
      check(amr_domain_field_stats(d.get(), name, k, factor, &s));
      auto row = base;
      row.insert(row.end(), {name, fmt(s.compression_rate), fmt(s.mean_removed_zeros),
                             std::to_string(s.groups),
                             timing && s.groups > 0 ? fmt(s.throughput_mb_s, "%.3f") : ""});
      rows.push_back(row);
    }
  }
  if (n > 0) {
    note("mean refinement ratio " + fmt(sum_ref / n) + ", mean ownership ratio " +
         fmt(sum_own / n));
  }
  return rows;
}

// ---- checkpoint / restart ----

struct CheckFlags {
  std::string path;
  std::optional<std::uint32_t> context;
  std::string out;
};

// Reloads every state blob of a context and compares its re-serialization.
// Returns the number of mismatching domains.
std::size_t restart(const CheckFlags& f, const DbFlags& dbf) {
  Db db = open_db(f.path);
  const std::uint32_t ctx = pick_context(db.get(), f.context);
  const auto first = domains_of(db.get(), ctx);
  if (first.empty()) throw RuntimeError("NotFound: context " + std::to_string(ctx) + " is empty");

  Db out;
  if (!f.out.empty()) out = create_db(f.out, AMR_DB_CHECKPOINT, dbf);

  std::uint32_t n_domains = 0;
  std::size_t mismatches = 0;
  for (std::uint32_t id = 0; id == 0 || id < n_domains; ++id) {
    const auto blob = raw_of(db.get(), ctx, id);
    amr_domain* raw = nullptr;
    std::uint64_t step = 0;
    std::uint32_t n = 0;
    check(amr_state_deserialize(blob.data(), blob.size(), &raw, &step, &n));
    Domain d(raw);
    if (id == 0) n_domains = n;
    if (n != n_domains) throw RuntimeError("CorruptRecord: inconsistent domain count");
    const auto again = state_of(d.get(), step, n);
    if (again != blob) {
      ++mismatches;
      std::cerr << "domain " << id << ": re-serialized state differs\n";
    }
    if (out) check(amr_db_write_raw(out.get(), ctx, id, again.data(), again.size()));
  }
  if (out) check(amr_db_commit(out.get()));
  return mismatches;
}

// ---- bench ----

struct BenchFlags {
  std::size_t workers = 64;
  std::string mode = "both";
  std::uint32_t ncf = 16;
  std::size_t bytes = 1 << 20;
  std::size_t reps = 5;
  std::uint64_t max_file_size = 2ull << 30;
  std::string out;
  std::string csv;
  std::uint32_t stripe_count = 0;
  std::uint64_t stripe_size = 0;
};

void run_bench(const BenchFlags& b, std::uint64_t seed) {
  if (b.workers < 1) throw UsageError("--workers must be >= 1");
  if (b.reps < 1) throw UsageError("--reps must be >= 1");
  if (b.bytes < 1024) throw UsageError("--bytes must be >= 1024");
  if (b.ncf < 1) throw UsageError("--ncf must be >= 1");

  amr_bench_report* raw = nullptr;
  check(amr_bench_report_create(&raw));
  Report report(raw);
  std::vector<amr_bench_mode> modes;
  if (b.mode != "aggregated") modes.push_back(AMR_BENCH_LEGACY);
  if (b.mode != "legacy") modes.push_back(AMR_BENCH_AGGREGATED);
  for (amr_bench_mode m : modes) {
    amr_bench_config c;
    amr_bench_config_init(&c);
    c.n_workers = b.workers;
    c.mode = m;
    c.ncf = b.ncf;
    c.bytes_per_worker = b.bytes;
    c.repetitions = b.reps;
    c.max_file_size = b.max_file_size;
    c.output = b.out.c_str();
    c.seed = seed;
    c.stripe_count = b.stripe_count;
    c.stripe_size = b.stripe_size;
    note(std::string("running ") + (m == AMR_BENCH_LEGACY ? "legacy" : "aggregated"));
    check(amr_bench_run(&c, report.get()));
  }

  std::vector<std::vector<std::string>> rows = {
      {"mode", "workers", "ncf", "runs", "mean_s", "mean_gb_per_s", "stddev_gb_per_s", "files"}};
  for (std::size_t i = 0; i < amr_bench_summary_count(report.get()); ++i) {
    amr_bench_summary s;
    check(amr_bench_summary_get(report.get(), i, &s));
    rows.push_back({s.aggregated ? "aggregated" : "legacy", std::to_string(s.n_workers),
                    std::to_string(s.ncf), std::to_string(s.runs), fmt(s.mean_seconds),
                    fmt(s.mean_gb_per_s, "%.4f"), fmt(s.stddev_gb_per_s, "%.4f"),
                    std::to_string(s.file_count)});
  }
  print_table(rows);
  if (!b.csv.empty()) check(amr_bench_emit_csv(report.get(), b.csv.c_str()));
}

// ---- driver ----

struct RunFlags {
  std::size_t steps = 10;
  std::size_t checkpoint_every = 5;
  std::size_t postproc_every = 2;
  std::string out;
};

void run_driver(const RunFlags& r, const GenFlags& g, const SplitFlags& s, const DbFlags& dbf,
                std::uint64_t seed) {
  if (r.checkpoint_every < 1) throw UsageError("--checkpoint-every must be >= 1");
  if (r.postproc_every < 1) throw UsageError("--postproc-every must be >= 1");
  const std::string ckp_path = r.out + "/checkpoint";
  const std::string pp_path = r.out + "/postproc";
  Db ckp = create_db(ckp_path, AMR_DB_CHECKPOINT, dbf);
  Db pp = create_db(pp_path, AMR_DB_POSTPROC, dbf);
  std::size_t ckp_count = 0;
  std::size_t pp_count = 0;
  for (std::size_t step = 1; step <= r.steps; ++step) {
    const bool do_ckp = step % r.checkpoint_every == 0;
    const bool do_pp = step % r.postproc_every == 0;
    if (!do_ckp && !do_pp) continue;
    // The shell grows with time, a stand-in for an expanding blast wave.
    const Domain global = generate(g, seed + step, 0.01 * static_cast<double>(step));
    const auto parts = split(global.get(), s);
    const auto ctx = static_cast<std::uint32_t>(step);
    for (const auto& d : parts) {
      if (do_ckp) {
        const auto blob = state_of(d.get(), step, static_cast<std::uint32_t>(parts.size()));
        check(amr_db_write_raw(ckp.get(), ctx, amr_domain_id(d.get()), blob.data(), blob.size()));
      }
      if (do_pp) check(amr_db_write_domain(pp.get(), ctx, d.get()));
    }
    ckp_count += do_ckp;
    pp_count += do_pp;
    note("step " + std::to_string(step) + (do_ckp ? " checkpoint" : "") +
         (do_pp ? " postproc" : ""));
  }
  check(amr_db_commit(ckp.get()));
  check(amr_db_commit(pp.get()));
  std::cout << r.steps << " steps, " << ckp_count << " checkpoints in " << ckp_path << ", "
            << pp_count << " post-processing outputs in " << pp_path << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"amrstore: storage and compression of AMR trees"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
  app.add_flag("--verbose,-v", g_verbose, "Progress messages on stderr");

  GenFlags gen;
  DbFlags gen_db;
  std::string gen_out;
  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic global tree");
  add_gen_flags(c_gen, gen);
  add_db_flags(c_gen, gen_db);
  c_gen->add_option("--out", gen_out, "Output database")->required();

  std::string in_path;
  std::string out_path;
  std::optional<std::uint32_t> context;
  DbFlags pipe_db;
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--in", in_path, "Input database")->required();
    cmd->add_option("--out", out_path, "Output database")->required();
    cmd->add_option("--context", context, "Context id (default: first)");
    cmd->add_option("--db-fields", pipe_db.fields, "Fields kept in the output database");
    add_db_flags(cmd, pipe_db);
  };

  SplitFlags split_flags;
  auto* c_dec = app.add_subcommand("decompose", "Split a global tree into domains");
  add_io(c_dec);
  add_split_flags(c_dec, split_flags);

  std::string prune_csv;
  auto* c_prune = app.add_subcommand("prune", "Remove ghost subtrees from every domain");
  add_io(c_prune);
  c_prune->add_option("--csv", prune_csv, "Write the removal table as CSV");

  auto* c_asm = app.add_subcommand("assemble", "Merge domains back into one tree");
  add_io(c_asm);

  std::string stats_csv;
  int stats_k = 4;
  double stats_factor = 1.0;
  bool stats_no_timing = false;
  auto* c_stats = app.add_subcommand("stats", "Per-domain compression statistics");
  c_stats->add_option("--in", in_path, "Input database")->required();
  c_stats->add_option("--context", context, "Context id (default: first)");
  c_stats->add_option("--csv", stats_csv, "Write the table as CSV");
  c_stats->add_option("--k", stats_k, "Leading-zero header width")->capture_default_str();
  c_stats->add_option("--factor", stats_factor, "Father prediction factor")
      ->capture_default_str();
  c_stats->add_flag("--no-timing", stats_no_timing, "Leave the throughput column empty");

  GenFlags ckp_gen;
  SplitFlags ckp_split;
  DbFlags ckp_db;
  std::string ckp_out;
  std::uint64_t ckp_step = 0;
  auto* c_ckp = app.add_subcommand("checkpoint", "Write a synthetic state as raw blobs");
  add_gen_flags(c_ckp, ckp_gen);
  add_split_flags(c_ckp, ckp_split);
  add_db_flags(c_ckp, ckp_db);
  c_ckp->add_option("--out", ckp_out, "Output checkpoint database")->required();
  c_ckp->add_option("--step", ckp_step, "Step number stored in the state")
      ->capture_default_str();

  CheckFlags rst;
  DbFlags rst_db;
  auto* c_rst = app.add_subcommand("restart", "Reload a checkpoint and verify bit identity");
  c_rst->add_option("--in", rst.path, "Checkpoint database")->required();
  c_rst->add_option("--context", rst.context, "Context id (default: first)");
  c_rst->add_option("--out", rst.out, "Write the reloaded state to a new database");
  add_db_flags(c_rst, rst_db);

  BenchFlags bench;
  auto* c_bench = app.add_subcommand("bench", "Write throughput benchmark");
  c_bench->add_option("--workers", bench.workers, "Parallel writers")->capture_default_str();
  c_bench->add_option("--mode", bench.mode, "Modes to run")
      ->check(CLI::IsMember({"legacy", "aggregated", "both"}))
      ->capture_default_str();
  c_bench->add_option("--ncf", bench.ncf, "Contributors per file in aggregated mode")
      ->capture_default_str();
  c_bench->add_option("--bytes", bench.bytes, "Bytes written per worker")
      ->capture_default_str();
  c_bench->add_option("--reps", bench.reps, "Repetitions")->capture_default_str();
  c_bench->add_option("--max-file-size", bench.max_file_size, "Data file size limit")
      ->capture_default_str();
  c_bench->add_option("--out", bench.out, "Scratch directory")->required();
  c_bench->add_option("--csv", bench.csv, "Write rows and summaries as CSV");
  c_bench->add_option("--stripe-count", bench.stripe_count, "Recorded stripe count");
  c_bench->add_option("--stripe-size", bench.stripe_size, "Recorded stripe size");

  std::uint32_t exp_domain = 0;
  bool owned_only = false;
  auto* c_exp = app.add_subcommand("export", "Dump leaves as plain text");
  c_exp->add_option("--in", in_path, "Input database")->required();
  c_exp->add_option("--context", context, "Context id (default: first)");
  c_exp->add_option("--domain", exp_domain, "Domain id")->capture_default_str();
  c_exp->add_option("--out", out_path, "Output text file")->required();
  c_exp->add_flag("--owned-only", owned_only, "Skip ghost leaves");

  RunFlags drv;
  GenFlags drv_gen;
  SplitFlags drv_split;
  DbFlags drv_db;
  auto* c_run = app.add_subcommand("run", "Step driver with separate output frequencies");
  add_gen_flags(c_run, drv_gen);
  add_split_flags(c_run, drv_split);
  add_db_flags(c_run, drv_db);
  c_run->add_option("--steps", drv.steps, "Number of steps")->capture_default_str();
  c_run->add_option("--checkpoint-every", drv.checkpoint_every, "Checkpoint period")
      ->capture_default_str();
  c_run->add_option("--postproc-every", drv.postproc_every, "Post-processing period")
      ->capture_default_str();
  c_run->add_option("--out", drv.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (c_gen->parsed()) {
      validate_gen(gen);
      const Domain g = generate(gen, seed);
      Db db = create_db(gen_out, AMR_DB_POSTPROC, gen_db);
      check(amr_db_write_domain(db.get(), 0, g.get()));
      check(amr_db_commit(db.get()));
      std::cout << "generated " << amr_domain_node_count(g.get()) << " nodes, "
                << amr_domain_leaf_count(g.get()) << " leaves\n";
    } else if (c_dec->parsed()) {
      if (split_flags.domains < 1) throw UsageError("--domains must be >= 1");
      Db in = open_db(in_path);
      const std::uint32_t ctx = pick_context(in.get(), context);
      amr_domain* raw = nullptr;
      check(amr_db_read_domain(in.get(), ctx, 0, &raw));
      const Domain global(raw);
      const auto parts = split(global.get(), split_flags);
      Db out = create_db(out_path, AMR_DB_POSTPROC, pipe_db);
      write_domains(out.get(), ctx, parts);
      std::cout << "wrote " << parts.size() << " domains\n";
    } else if (c_prune->parsed()) {
      Db in = open_db(in_path);
      const std::uint32_t ctx = pick_context(in.get(), context);
      std::vector<std::vector<std::string>> rows = {
          {"domain", "nodes_before", "nodes_after", "removed_percent"}};
      std::vector<Domain> pruned;
      for (const auto& d : read_domains(in.get(), ctx)) {
        amr_domain* raw = nullptr;
        amr_prune_stats s;
        check(amr_domain_prune(d.get(), &raw, &s));
        pruned.emplace_back(raw);
        rows.push_back({std::to_string(amr_domain_id(d.get())), std::to_string(s.nodes_before),
                        std::to_string(s.nodes_after), fmt(100.0 * s.removed_fraction, "%.2f")});
      }
      Db out = create_db(out_path, AMR_DB_POSTPROC, pipe_db);
      write_domains(out.get(), ctx, pruned);
      print_table(rows);
      if (!prune_csv.empty()) write_text(prune_csv, to_csv(rows));
    } else if (c_asm->parsed()) {
      Db in = open_db(in_path);
      const std::uint32_t ctx = pick_context(in.get(), context);
      const Domain whole = assemble_all(read_domains(in.get(), ctx));
      Db out = create_db(out_path, AMR_DB_POSTPROC, pipe_db);
      check(amr_db_write_domain(out.get(), ctx, whole.get()));
      check(amr_db_commit(out.get()));
      std::cout << "assembled " << amr_domain_node_count(whole.get()) << " nodes\n";
    } else if (c_stats->parsed()) {
      Db in = open_db(in_path);
      const auto rows =
          stats_table(in.get(), pick_context(in.get(), context), stats_k, stats_factor,
                      !stats_no_timing);
      print_table(rows);
      if (!stats_csv.empty()) write_text(stats_csv, to_csv(rows));
    } else if (c_ckp->parsed()) {
      validate_gen(ckp_gen);
      const Domain g = generate(ckp_gen, seed);
      const auto parts = split(g.get(), ckp_split);
      Db db = create_db(ckp_out, AMR_DB_CHECKPOINT, ckp_db);
      const auto ctx = static_cast<std::uint32_t>(ckp_step);
      for (const auto& d : parts) {
        const auto blob = state_of(d.get(), ckp_step, static_cast<std::uint32_t>(parts.size()));
        check(amr_db_write_raw(db.get(), ctx, amr_domain_id(d.get()), blob.data(), blob.size()));
      }
      check(amr_db_commit(db.get()));
      std::cout << "checkpointed " << parts.size() << " domains at step " << ckp_step << '\n';
    } else if (c_rst->parsed()) {
      const std::size_t bad = restart(rst, rst_db);
      if (bad != 0) {
        std::cout << "different (" << bad << " domains)\n";
        return 1;
      }
      std::cout << "identical\n";
    } else if (c_bench->parsed()) {
      run_bench(bench, seed);
    } else if (c_exp->parsed()) {
      Db in = open_db(in_path);
      amr_domain* raw = nullptr;
      check(amr_db_read_domain(in.get(), pick_context(in.get(), context), exp_domain, &raw));
      const Domain d(raw);
      check(amr_domain_export_text(d.get(), out_path.c_str(), owned_only ? 1 : 0));
    } else if (c_run->parsed()) {
      validate_gen(drv_gen);
      run_driver(drv, drv_gen, drv_split, drv_db, seed);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
