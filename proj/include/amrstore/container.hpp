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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amrstore/amr_object.hpp"
#include "amrstore/amr_tree.hpp"
#include "amrstore/deltacodec.hpp"

namespace amrstore {

// checkpoint: raw blobs for restart. postproc: self-describing AMR objects.
enum class DbKind { kCheckpoint, kPostproc };

inline constexpr std::uint64_t kDefaultMaxFileSize = std::uint64_t{2} << 30;
inline constexpr std::uint64_t kMinMaxFileSize = 1024;

struct DbParams {
  DbKind kind = DbKind::kPostproc;
  std::uint64_t max_file_size = kDefaultMaxFileSize;
  std::uint32_t ncf = 1;  // contributors per file
  // Post-processing only: keep just these fields when writing objects.
  std::optional<std::vector<std::string>> field_selection;
  // fsync data files and the index on commit.
  bool durable = true;
};

enum class RecordKind : std::uint8_t { kRaw = 0, kAmrObject = 1 };

struct IndexEntry {
  std::uint32_t context_id = 0;
  std::uint32_t domain_id = 0;
  std::uint32_t group_id = 0;
  std::uint32_t file_seq = 0;
  std::uint64_t offset = 0;  // start of the framed record
  std::uint64_t length = 0;  // payload bytes
  RecordKind kind = RecordKind::kRaw;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

// Bytes of framing in front of every payload:
// "HDB1", u64 payload length, u8 kind, u32 context, u32 domain.
inline constexpr std::size_t kRecordHeaderBytes = 21;

std::string data_file_name(std::uint32_t group, std::uint32_t seq);

// Aggregated on-disk store. Contributors (domains) are grouped ncf to a file
// group; each group appends to its current file until the next record would
// push it past max_file_size, then rolls over to a new file. The line-based
// index.txt is replaced atomically on commit; readers see only committed
// entries.
//
// Writes are thread-safe: appends to one group are serialized, distinct
// groups proceed in parallel.
class Database {
 public:
  static Database create(const std::filesystem::path& path, const DbParams& params);
  // Opens a committed database for reading and further appends.
  static Database open(const std::filesystem::path& path);

  Database(Database&&) noexcept;
  Database& operator=(Database&&) noexcept;
  ~Database();

  const DbParams& params() const;
  const std::filesystem::path& path() const;

  IndexEntry write_raw(std::uint32_t context_id, std::uint32_t domain_id,
                       std::span<const std::uint8_t> payload);
  IndexEntry write_object(std::uint32_t context_id, std::uint32_t domain_id,
                          const AmrObjectPayload& payload);
  // Encodes dt (after field selection) and writes it under dt.domain_id.
  IndexEntry write_domain(std::uint32_t context_id, const DomainTree& dt,
                          const DeltaOptions& options = {});

  void commit();

  // Entries visible through this handle, sorted by (context, domain).
  std::vector<IndexEntry> entries() const;
  std::vector<std::uint32_t> list_contexts() const;
  std::vector<std::uint32_t> list_domains(std::uint32_t context_id) const;
  const IndexEntry& find(std::uint32_t context_id, std::uint32_t domain_id) const;

  std::vector<std::uint8_t> read_raw(std::uint32_t context_id,
                                     std::uint32_t domain_id) const;
  AmrObjectPayload read_object(std::uint32_t context_id, std::uint32_t domain_id) const;
  DomainTree read_domain(std::uint32_t context_id, std::uint32_t domain_id) const;

  // Data files currently on disk (the index is not counted).
  std::size_t file_count() const;

 private:
  struct Impl;
  explicit Database(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace amrstore
