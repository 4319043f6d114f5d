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

#include "amrstore/bench.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <latch>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "amrstore/container.hpp"
#include "amrstore/error.hpp"

namespace fs = std::filesystem;

namespace amrstore {

namespace {

constexpr std::size_t kAmrChunk = 4096;

// Lets the workers of one file group append in rank order.
struct Turnstile {
  std::mutex m;
  std::condition_variable cv;
  std::size_t next = 0;
};

void write_file(const fs::path& p, const std::uint8_t* data, std::size_t n, std::size_t chunk) {
  const int fd = ::open(p.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::kIoFailure, "cannot create " + p.string());
  std::size_t done = 0;
  while (done < n) {
    const std::size_t want = std::min(chunk, n - done);
    const ssize_t w = ::write(fd, data + done, want);
    if (w < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw Error(ErrorCode::kIoFailure, "cannot write " + p.string());
    }
    done += static_cast<std::size_t>(w);
  }
  if (::close(fd) != 0) throw Error(ErrorCode::kIoFailure, "cannot close " + p.string());
}

std::size_t count_files(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& de : fs::directory_iterator(dir)) n += de.is_regular_file() ? 1 : 0;
  return n;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string mode_name(BenchMode mode) {
  return mode == BenchMode::kLegacy ? "legacy" : "aggregated";
}

void validate_config(const BenchConfig& cfg) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kConfigInvalid, why); };
  if (cfg.n_workers < 1) bad("n_workers must be >= 1");
  if (cfg.repetitions < 1) bad("repetitions must be >= 1");
  if (cfg.bytes_per_worker < 1024) bad("bytes_per_worker must be >= 1 KiB");
  if (cfg.output.empty()) bad("output path is required");
  if (cfg.mode == BenchMode::kAggregated) {
    if (cfg.ncf < 1) bad("ncf must be >= 1");
    if (cfg.max_file_size < kMinMaxFileSize) bad("max_file_size must be >= 1 KiB");
  }
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  if (rows.empty()) return s;
  s.mode = rows.front().mode;
  s.n_workers = rows.front().n_workers;
  s.ncf = rows.front().ncf;
  s.bytes = rows.front().bytes;
  s.runs = rows.size();
  double sum_s = 0.0;
  double sum_bw = 0.0;
  for (const auto& r : rows) {
    sum_s += r.seconds;
    sum_bw += r.gb_per_s;
  }
  const double n = static_cast<double>(rows.size());
  s.mean_seconds = sum_s / n;
  s.mean_gb_per_s = sum_bw / n;
  if (rows.size() > 1) {
    double ss = 0.0;
    for (const auto& r : rows) {
      const double d = r.gb_per_s - s.mean_gb_per_s;
      ss += d * d;
    }
    s.stddev_gb_per_s = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

void run_write_bench(const BenchConfig& cfg, BenchReport& report) {
  validate_config(cfg);
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + cfg.output.string());

  std::vector<std::vector<std::uint8_t>> data(cfg.n_workers);
  for (std::size_t w = 0; w < cfg.n_workers; ++w) {
    std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + w);
    data[w].resize(cfg.bytes_per_worker);
    for (std::size_t i = 0; i < data[w].size(); i += 8) {
      const std::uint64_t v = rng();
      std::memcpy(data[w].data() + i, &v, std::min<std::size_t>(8, data[w].size() - i));
    }
  }

  const std::string mode = mode_name(cfg.mode);
  const std::uint32_t ncf = cfg.mode == BenchMode::kLegacy ? 1 : cfg.ncf;
  std::vector<BenchRow> rows;
  std::size_t files = 0;
  for (std::size_t run = 0; run < cfg.repetitions; ++run) {
    const fs::path dir = cfg.output / (mode + "_w" + std::to_string(cfg.n_workers) + "_ncf" +
                                       std::to_string(ncf) + "_run" + std::to_string(run));
    fs::remove_all(dir, ec);
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string());

    std::optional<Database> db;
    if (cfg.mode == BenchMode::kAggregated) {
      DbParams p;
      p.kind = DbKind::kCheckpoint;
      p.ncf = cfg.ncf;
      p.max_file_size = cfg.max_file_size;
      p.durable = false;
      db.emplace(Database::create(dir, p));
    }

    const std::size_t n_groups = (cfg.n_workers + ncf - 1) / ncf;
    std::vector<Turnstile> turns(n_groups);
    std::latch start(1);
    std::vector<std::exception_ptr> errors(cfg.n_workers);
    std::vector<std::thread> workers;
    workers.reserve(cfg.n_workers);
    for (std::size_t w = 0; w < cfg.n_workers; ++w) {
      workers.emplace_back([&, w] {
        start.wait();
        try {
          const auto& buf = data[w];
          if (db) {
            auto& turn = turns[w / ncf];
            std::unique_lock lock(turn.m);
            turn.cv.wait(lock, [&] { return turn.next == w % ncf; });
            try {
              db->write_raw(0, static_cast<std::uint32_t>(w), buf);
            } catch (...) {
              errors[w] = std::current_exception();
            }
            ++turn.next;
            turn.cv.notify_all();
          } else {
            const std::size_t amr = buf.size() / 6;
            write_file(dir / ("amr_" + std::to_string(w) + ".out"), buf.data(), amr, kAmrChunk);
            write_file(dir / ("hydro_" + std::to_string(w) + ".out"), buf.data() + amr,
                       buf.size() - amr, buf.size());
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    const auto t0 = std::chrono::steady_clock::now();
    start.count_down();
    for (auto& t : workers) t.join();
    if (db) db->commit();
    const auto t1 = std::chrono::steady_clock::now();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    BenchRow row;
    row.mode = mode;
    row.n_workers = cfg.n_workers;
    row.ncf = ncf;
    row.run = run;
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    row.bytes = static_cast<std::uint64_t>(cfg.bytes_per_worker) * cfg.n_workers;
    row.gb_per_s = static_cast<double>(row.bytes) / row.seconds / 1073741824.0;
    rows.push_back(row);
    db.reset();
    files = count_files(dir);
  }
  BenchSummary s = summarize(rows);
  s.file_count = files;
  s.stripe_count = cfg.stripe_count;
  s.stripe_size = cfg.stripe_size;
  report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  report.summaries.push_back(s);
}

std::string format_csv(const BenchReport& report) {
  if (report.rows.empty() && report.summaries.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty benchmark report");
  }
  std::string out =
      "mode,n_workers,ncf,run,seconds,bytes,gb_per_s,stddev_gb_per_s,file_count,"
      "stripe_count,stripe_size\n";
  for (const auto& r : report.rows) {
    out += r.mode + "," + std::to_string(r.n_workers) + "," + std::to_string(r.ncf) + "," +
           std::to_string(r.run) + "," + fmt_double(r.seconds) + "," + std::to_string(r.bytes) +
           "," + fmt_double(r.gb_per_s) + ",,,,\n";
  }
  for (const auto& s : report.summaries) {
    out += s.mode + "," + std::to_string(s.n_workers) + "," + std::to_string(s.ncf) +
           ",aggregate," + fmt_double(s.mean_seconds) + "," + std::to_string(s.bytes) + "," +
           fmt_double(s.mean_gb_per_s) + "," + fmt_double(s.stddev_gb_per_s) + "," +
           std::to_string(s.file_count) + "," + std::to_string(s.stripe_count) + "," +
           std::to_string(s.stripe_size) + "\n";
  }
  return out;
}

void emit_csv(const BenchReport& report, const fs::path& path) {
  const std::string text = format_csv(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())) || !out.flush()) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
}

}  // namespace amrstore
