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

#include "amrstore/container.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include "amrstore/error.hpp"
#include "bytes.hpp"

namespace fs = std::filesystem;

namespace amrstore {

namespace {

constexpr char kIndexName[] = "index.txt";
constexpr char kIndexMagic[] = "# amrstore-db 1";
constexpr std::uint8_t kRecordMagic[4] = {'H', 'D', 'B', '1'};

using Key = std::pair<std::uint32_t, std::uint32_t>;

[[noreturn]] void throw_io(const std::string& what, const fs::path& p) {
  throw Error(ErrorCode::kIoFailure, what + " '" + p.string() + "': " + std::strerror(errno));
}

const char* kind_name(DbKind k) {
  return k == DbKind::kCheckpoint ? "checkpoint" : "postproc";
}

const char* tag_name(RecordKind k) { return k == RecordKind::kRaw ? "raw" : "amr"; }

void validate_params(const DbParams& p) {
  if (p.ncf < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ncf must be >= 1");
  }
  if (p.max_file_size < kMinMaxFileSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_file_size must be >= " + std::to_string(kMinMaxFileSize));
  }
  if (p.field_selection && p.kind != DbKind::kPostproc) {
    throw Error(ErrorCode::kInvalidArgument,
                "field selection applies to post-processing databases only");
  }
}

std::string header_line(const DbParams& p) {
  std::ostringstream os;
  os << kIndexMagic << " kind=" << kind_name(p.kind) << " max_file_size=" << p.max_file_size
     << " ncf=" << p.ncf << " fields=";
  if (!p.field_selection) {
    os << '*';
  } else {
    for (std::size_t i = 0; i < p.field_selection->size(); ++i) {
      os << (i ? "," : "") << (*p.field_selection)[i];
    }
  }
  return os.str();
}

DbParams parse_header(const std::string& line, const fs::path& path) {
  auto fail = [&](const std::string& why) -> DbParams {
    throw Error(ErrorCode::kNotADatabase, path.string() + ": " + why);
  };
  if (line.rfind(kIndexMagic, 0) != 0) return fail("bad index header");
  DbParams p;
  std::istringstream is(line.substr(sizeof(kIndexMagic) - 1));
  std::string tok;
  bool have_kind = false;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) return fail("bad header token '" + tok + "'");
    const std::string k = tok.substr(0, eq);
    const std::string v = tok.substr(eq + 1);
    try {
      if (k == "kind") {
        if (v == "checkpoint") p.kind = DbKind::kCheckpoint;
        else if (v == "postproc") p.kind = DbKind::kPostproc;
        else return fail("unknown kind '" + v + "'");
        have_kind = true;
      } else if (k == "max_file_size") {
        p.max_file_size = std::stoull(v);
      } else if (k == "ncf") {
        p.ncf = static_cast<std::uint32_t>(std::stoul(v));
      } else if (k == "fields") {
        if (v != "*") {
          std::vector<std::string> names;
          std::istringstream fs_(v);
          std::string name;
          while (std::getline(fs_, name, ',')) {
            if (!name.empty()) names.push_back(name);
          }
          p.field_selection = std::move(names);
        }
      }
    } catch (const std::logic_error&) {
      return fail("bad value in '" + tok + "'");
    }
  }
  if (!have_kind) return fail("index header lacks kind");
  return p;
}

IndexEntry parse_entry(const std::string& line, const fs::path& path, std::uint32_t ncf) {
  std::istringstream is(line);
  IndexEntry e;
  std::string tag;
  if (!(is >> e.context_id >> e.domain_id >> e.group_id >> e.file_seq >> e.offset >>
        e.length >> tag)) {
    throw Error(ErrorCode::kNotADatabase, path.string() + ": bad index line '" + line + "'");
  }
  if (tag == "raw") e.kind = RecordKind::kRaw;
  else if (tag == "amr") e.kind = RecordKind::kAmrObject;
  else throw Error(ErrorCode::kNotADatabase, path.string() + ": bad kind tag '" + tag + "'");
  if (e.group_id != e.domain_id / ncf) {
    throw Error(ErrorCode::kNotADatabase, path.string() + ": group mismatch in '" + line + "'");
  }
  return e;
}

bool parse_data_name(const std::string& name, std::uint32_t* group, std::uint32_t* seq) {
  unsigned g = 0;
  unsigned s = 0;
  char tail[8] = {};
  if (std::sscanf(name.c_str(), "g%u.f%u.%4s", &g, &s, tail) != 3) return false;
  if (std::strcmp(tail, "dat") != 0) return false;
  if (data_file_name(g, s) != name) return false;
  *group = g;
  *seq = s;
  return true;
}

void write_all(int fd, const std::uint8_t* data, std::size_t n, std::uint64_t offset,
               const fs::path& p) {
  while (n > 0) {
    const ssize_t w = ::pwrite(fd, data, n, static_cast<off_t>(offset));
    if (w < 0) {
      if (errno == EINTR) continue;
      throw_io("cannot write", p);
    }
    data += w;
    n -= static_cast<std::size_t>(w);
    offset += static_cast<std::uint64_t>(w);
  }
}

}  // namespace

std::string data_file_name(std::uint32_t group, std::uint32_t seq) {
  return "g" + std::to_string(group) + ".f" + std::to_string(seq) + ".dat";
}

struct Database::Impl {
  struct Group {
    std::mutex mu;
    bool has_file = false;
    std::uint32_t seq = 0;
    std::uint64_t size = 0;
    int fd = -1;
    bool dirty = false;
  };

  fs::path root;
  DbParams params;

  mutable std::mutex index_mu;
  std::map<Key, IndexEntry> entries;
  std::set<Key> reserved;

  std::mutex groups_mu;
  std::map<std::uint32_t, std::unique_ptr<Group>> groups;

  ~Impl() {
    for (auto& [id, g] : groups) {
      if (g->fd >= 0) ::close(g->fd);
    }
  }

  Group& group(std::uint32_t id) {
    std::lock_guard lock(groups_mu);
    auto& slot = groups[id];
    if (!slot) slot = std::make_unique<Group>();
    return *slot;
  }

  void reserve(const Key& key) {
    std::lock_guard lock(index_mu);
    if (entries.count(key) || !reserved.insert(key).second) {
      throw Error(ErrorCode::kDuplicateEntry,
                  "context " + std::to_string(key.first) + " domain " +
                      std::to_string(key.second) + " already written");
    }
  }

  void release(const Key& key) {
    std::lock_guard lock(index_mu);
    reserved.erase(key);
  }

  void open_file(Group& g, std::uint32_t group_id) {
    const fs::path p = root / data_file_name(group_id, g.seq);
    if (g.fd >= 0) ::close(g.fd);
    g.fd = ::open(p.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644);
    if (g.fd < 0) throw_io("cannot open", p);
    struct stat st {};
    if (::fstat(g.fd, &st) != 0) throw_io("cannot stat", p);
    g.size = static_cast<std::uint64_t>(st.st_size);
    g.has_file = true;
  }

  IndexEntry append(std::uint32_t ctx, std::uint32_t dom, RecordKind kind,
                    std::span<const std::uint8_t> payload) {
    const Key key{ctx, dom};
    reserve(key);
    try {
      detail::ByteWriter frame;
      frame.raw(kRecordMagic);
      frame.u64(payload.size());
      frame.u8(static_cast<std::uint8_t>(kind));
      frame.u32(ctx);
      frame.u32(dom);

      IndexEntry e;
      e.context_id = ctx;
      e.domain_id = dom;
      e.group_id = dom / params.ncf;
      e.length = payload.size();
      e.kind = kind;
      const std::uint64_t record = kRecordHeaderBytes + payload.size();

      Group& g = group(e.group_id);
      {
        std::lock_guard lock(g.mu);
        if (!g.has_file) {
          open_file(g, e.group_id);
        } else if (g.size > 0 && g.size + record > params.max_file_size) {
          ++g.seq;
          open_file(g, e.group_id);
        }
        if (g.fd < 0) open_file(g, e.group_id);
        const fs::path p = root / data_file_name(e.group_id, g.seq);
        e.file_seq = g.seq;
        e.offset = g.size;
        write_all(g.fd, frame.bytes().data(), frame.bytes().size(), g.size, p);
        write_all(g.fd, payload.data(), payload.size(), g.size + kRecordHeaderBytes, p);
        g.size += record;
        g.dirty = true;
      }

      std::lock_guard lock(index_mu);
      reserved.erase(key);
      entries.emplace(key, e);
      return e;
    } catch (...) {
      release(key);
      throw;
    }
  }

  void load_index() {
    const fs::path p = root / kIndexName;
    std::ifstream in(p);
    if (!in) {
      throw Error(ErrorCode::kNotADatabase, root.string() + ": no " + kIndexName);
    }
    std::string line;
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kNotADatabase, root.string() + ": empty index");
    }
    params = parse_header(line, root);
    if (params.ncf < 1 || params.max_file_size < kMinMaxFileSize) {
      throw Error(ErrorCode::kNotADatabase, root.string() + ": bad parameters in index");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      IndexEntry e = parse_entry(line, root, params.ncf);
      if (!entries.emplace(Key{e.context_id, e.domain_id}, e).second) {
        throw Error(ErrorCode::kNotADatabase, root.string() + ": duplicate index entry");
      }
    }
  }

  // Resume appending after the highest-numbered file of each group.
  void scan_data_files() {
    for (const auto& de : fs::directory_iterator(root)) {
      std::uint32_t gid = 0;
      std::uint32_t seq = 0;
      if (!de.is_regular_file() || !parse_data_name(de.path().filename().string(), &gid, &seq)) {
        continue;
      }
      Group& g = group(gid);
      if (!g.has_file || seq > g.seq) {
        g.has_file = true;
        g.seq = seq;
        g.size = de.file_size();
      }
    }
  }

  void write_index() {
    std::vector<IndexEntry> snapshot;
    {
      std::lock_guard lock(index_mu);
      for (const auto& [k, e] : entries) snapshot.push_back(e);
    }
    std::ostringstream os;
    os << header_line(params) << '\n';
    for (const auto& e : snapshot) {
      os << e.context_id << ' ' << e.domain_id << ' ' << e.group_id << ' ' << e.file_seq
         << ' ' << e.offset << ' ' << e.length << ' ' << tag_name(e.kind) << '\n';
    }
    const std::string text = os.str();
    const fs::path tmp = root / (std::string(kIndexName) + ".tmp");
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw_io("cannot create", tmp);
    try {
      write_all(fd, reinterpret_cast<const std::uint8_t*>(text.data()), text.size(), 0, tmp);
      if (params.durable && ::fsync(fd) != 0) throw_io("cannot sync", tmp);
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    std::error_code ec;
    fs::rename(tmp, root / kIndexName, ec);
    if (ec) {
      throw Error(ErrorCode::kIoFailure, "cannot publish index: " + ec.message());
    }
  }
};

Database::Database(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Database::Database(Database&&) noexcept = default;
Database& Database::operator=(Database&&) noexcept = default;
Database::~Database() = default;

Database Database::create(const fs::path& path, const DbParams& params) {
  validate_params(params);
  std::error_code ec;
  if (fs::exists(path / kIndexName, ec)) {
    throw Error(ErrorCode::kAlreadyExists, path.string() + " already holds a database");
  }
  if (fs::exists(path, ec) && !fs::is_directory(path, ec)) {
    throw Error(ErrorCode::kIoFailure, path.string() + " exists and is not a directory");
  }
  fs::create_directories(path, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure, "cannot create " + path.string() + ": " + ec.message());
  }
  auto impl = std::make_unique<Impl>();
  impl->root = path;
  impl->params = params;
  impl->write_index();
  return Database(std::move(impl));
}

Database Database::open(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Error(ErrorCode::kNotADatabase, path.string() + " is not a directory");
  }
  auto impl = std::make_unique<Impl>();
  impl->root = path;
  impl->load_index();
  impl->scan_data_files();
  return Database(std::move(impl));
}

const DbParams& Database::params() const { return impl_->params; }
const fs::path& Database::path() const { return impl_->root; }

IndexEntry Database::write_raw(std::uint32_t context_id, std::uint32_t domain_id,
                               std::span<const std::uint8_t> payload) {
  if (impl_->params.kind != DbKind::kCheckpoint) {
    throw Error(ErrorCode::kKindMismatch, "raw blobs go to checkpoint databases only");
  }
  return impl_->append(context_id, domain_id, RecordKind::kRaw, payload);
}

IndexEntry Database::write_object(std::uint32_t context_id, std::uint32_t domain_id,
                                  const AmrObjectPayload& payload) {
  if (impl_->params.kind != DbKind::kPostproc) {
    throw Error(ErrorCode::kKindMismatch,
                "AMR objects go to post-processing databases only");
  }
  const auto& sel = impl_->params.field_selection;
  if (!sel) {
    return impl_->append(context_id, domain_id, RecordKind::kAmrObject, serialize(payload));
  }
  AmrObjectPayload filtered = payload;
  std::erase_if(filtered.fields, [&](const auto& f) {
    return std::find(sel->begin(), sel->end(), f.first) == sel->end();
  });
  return impl_->append(context_id, domain_id, RecordKind::kAmrObject, serialize(filtered));
}

IndexEntry Database::write_domain(std::uint32_t context_id, const DomainTree& dt,
                                  const DeltaOptions& options) {
  if (impl_->params.kind != DbKind::kPostproc) {
    throw Error(ErrorCode::kKindMismatch,
                "AMR objects go to post-processing databases only");
  }
  const auto& sel = impl_->params.field_selection;
  if (!sel) return write_object(context_id, dt.domain_id, encode_object(dt, options));
  DomainTree selected;
  selected.tree = dt.tree;
  selected.ownership = dt.ownership;
  selected.domain_id = dt.domain_id;
  for (const auto& [name, values] : dt.fields) {
    if (std::find(sel->begin(), sel->end(), name) != sel->end()) {
      selected.fields.emplace(name, values);
    }
  }
  return write_object(context_id, dt.domain_id, encode_object(selected, options));
}

void Database::commit() {
  if (impl_->params.durable) {
    std::lock_guard lock(impl_->groups_mu);
    for (auto& [id, g] : impl_->groups) {
      std::lock_guard glock(g->mu);
      if (g->dirty && g->fd >= 0 && ::fsync(g->fd) != 0) {
        throw_io("cannot sync", impl_->root / data_file_name(id, g->seq));
      }
      g->dirty = false;
    }
  }
  impl_->write_index();
}

std::vector<IndexEntry> Database::entries() const {
  std::lock_guard lock(impl_->index_mu);
  std::vector<IndexEntry> out;
  out.reserve(impl_->entries.size());
  for (const auto& [k, e] : impl_->entries) out.push_back(e);
  return out;
}

std::vector<std::uint32_t> Database::list_contexts() const {
  std::lock_guard lock(impl_->index_mu);
  std::vector<std::uint32_t> out;
  for (const auto& [k, e] : impl_->entries) {
    if (out.empty() || out.back() != k.first) out.push_back(k.first);
  }
  return out;
}

std::vector<std::uint32_t> Database::list_domains(std::uint32_t context_id) const {
  std::lock_guard lock(impl_->index_mu);
  std::vector<std::uint32_t> out;
  for (auto it = impl_->entries.lower_bound(Key{context_id, 0});
       it != impl_->entries.end() && it->first.first == context_id; ++it) {
    out.push_back(it->first.second);
  }
  return out;
}

const IndexEntry& Database::find(std::uint32_t context_id, std::uint32_t domain_id) const {
  std::lock_guard lock(impl_->index_mu);
  auto it = impl_->entries.find(Key{context_id, domain_id});
  if (it == impl_->entries.end()) {
    throw Error(ErrorCode::kNotFound, "context " + std::to_string(context_id) +
                                          " domain " + std::to_string(domain_id));
  }
  return it->second;
}

std::vector<std::uint8_t> Database::read_raw(std::uint32_t context_id,
                                             std::uint32_t domain_id) const {
  const IndexEntry e = find(context_id, domain_id);
  const fs::path p = impl_->root / data_file_name(e.group_id, e.file_seq);
  auto corrupt = [&](const std::string& why) {
    return Error(ErrorCode::kCorruptRecord,
                 p.filename().string() + " @" + std::to_string(e.offset) + ": " + why);
  };
  std::ifstream in(p, std::ios::binary);
  if (!in) throw corrupt("data file missing");
  in.seekg(static_cast<std::streamoff>(e.offset));
  std::uint8_t head[kRecordHeaderBytes];
  if (!in.read(reinterpret_cast<char*>(head), sizeof head)) throw corrupt("short header");
  detail::ByteReader r(head, ErrorCode::kCorruptRecord);
  if (std::memcmp(r.raw(4).data(), kRecordMagic, 4) != 0) throw corrupt("bad magic");
  if (r.u64() != e.length) throw corrupt("length does not match index");
  if (r.u8() != static_cast<std::uint8_t>(e.kind)) throw corrupt("kind does not match index");
  if (r.u32() != e.context_id || r.u32() != e.domain_id) {
    throw corrupt("context/domain do not match index");
  }
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(e.length));
  if (!in.read(reinterpret_cast<char*>(payload.data()),
               static_cast<std::streamsize>(payload.size()))) {
    throw corrupt("short payload");
  }
  return payload;
}

AmrObjectPayload Database::read_object(std::uint32_t context_id,
                                       std::uint32_t domain_id) const {
  if (find(context_id, domain_id).kind != RecordKind::kAmrObject) {
    throw Error(ErrorCode::kKindMismatch, "record is not an AMR object");
  }
  return deserialize_object(read_raw(context_id, domain_id));
}

DomainTree Database::read_domain(std::uint32_t context_id, std::uint32_t domain_id) const {
  return decode_object(read_object(context_id, domain_id), domain_id);
}

std::size_t Database::file_count() const {
  std::size_t n = 0;
  for (const auto& de : fs::directory_iterator(impl_->root)) {
    std::uint32_t g = 0;
    std::uint32_t s = 0;
    if (de.is_regular_file() && parse_data_name(de.path().filename().string(), &g, &s)) ++n;
  }
  return n;
}

}  // namespace amrstore
