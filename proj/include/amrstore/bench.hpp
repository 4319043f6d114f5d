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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace amrstore {

enum class BenchMode { kLegacy, kAggregated };

struct BenchConfig {
  std::size_t n_workers = 64;
  BenchMode mode = BenchMode::kLegacy;
  std::uint32_t ncf = 16;  // aggregated mode only
  std::size_t bytes_per_worker = 1 << 20;
  std::size_t repetitions = 5;
  std::uint64_t max_file_size = std::uint64_t{2} << 30;
  std::filesystem::path output;
  std::uint64_t seed = 1;
  // Recorded only; nothing here talks to a parallel file system.
  std::uint32_t stripe_count = 0;
  std::uint64_t stripe_size = 0;
};

struct BenchRow {
  std::string mode;
  std::size_t n_workers = 0;
  std::uint32_t ncf = 0;
  std::size_t run = 0;
  double seconds = 0.0;
  std::uint64_t bytes = 0;
  double gb_per_s = 0.0;  // bytes / seconds / 2^30
};

struct BenchSummary {
  std::string mode;
  std::size_t n_workers = 0;
  std::uint32_t ncf = 0;
  std::size_t runs = 0;
  double mean_seconds = 0.0;
  std::uint64_t bytes = 0;
  double mean_gb_per_s = 0.0;
  double stddev_gb_per_s = 0.0;  // sample standard deviation, 0 for one run
  std::size_t file_count = 0;    // files in one run's output directory
  std::uint32_t stripe_count = 0;
  std::uint64_t stripe_size = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSummary> summaries;
};

std::string mode_name(BenchMode mode);

// Throws kConfigInvalid before touching the disk.
void validate_config(const BenchConfig& cfg);

// Runs cfg.repetitions timed write passes, each into a fresh directory under
// cfg.output, and appends one row per pass plus one summary to `report`.
//
// Legacy mode: every worker writes its own AMR file (small scattered writes,
// one sixth of the bytes) and a field file (the rest, one large write).
// Aggregated mode: every worker writes one raw record through a checkpoint
// Database with the configured ncf. The clock starts when all workers are
// released from a barrier and stops after the last file is closed or the
// index committed.
void run_write_bench(const BenchConfig& cfg, BenchReport& report);

BenchSummary summarize(const std::vector<BenchRow>& rows);

// Header: mode,n_workers,ncf,run,seconds,bytes,gb_per_s followed by the
// extra columns stddev_gb_per_s,file_count,stripe_count,stripe_size.
// Summary rows carry run = "aggregate". Throws kInvalidArgument when empty.
void emit_csv(const BenchReport& report, const std::filesystem::path& path);
std::string format_csv(const BenchReport& report);

}  // namespace amrstore
