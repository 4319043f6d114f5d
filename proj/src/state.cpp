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

#include "amrstore/state.hpp"

#include <cstring>

#include "amrstore/error.hpp"
#include "bytes.hpp"

namespace amrstore {

namespace {
constexpr std::uint8_t kStateMagic[4] = {'C', 'K', 'P', '1'};
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::uint8_t> serialize_state(const CheckpointState& state) {
  const DomainTree& dt = state.domain;
  require_valid_domain(dt);
  const std::size_t n = dt.tree.node_count();
  detail::ByteWriter w;
  w.raw(kStateMagic);
  w.u32(dt.domain_id);
  w.u32(state.n_domains);
  w.u64(state.step);
  w.u8(static_cast<std::uint8_t>(dt.tree.dim()));
  w.u64(n);
  auto& out = w.bytes();
  out.reserve(out.size() + 2 * n + 8 * n * dt.fields.size() + 64);
  for (std::size_t i = 0; i < n; ++i) out.push_back(dt.tree.is_refined(i) ? 1 : 0);
  for (std::size_t i = 0; i < n; ++i) out.push_back(dt.ownership[i] ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(dt.fields.size()));
  for (const auto& [name, values] : dt.fields) {
    w.str(name);
    for (double v : values) w.f64(v);
  }
  w.u64(fnv1a64(out));
  return w.take();
}

CheckpointState deserialize_state(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw Error(ErrorCode::kCorruptRecord, "checkpoint blob too short");
  const auto body = bytes.first(bytes.size() - 8);
  detail::ByteReader tail(bytes.last(8), ErrorCode::kCorruptRecord);
  if (tail.u64() != fnv1a64(body)) {
    throw Error(ErrorCode::kCorruptRecord, "checkpoint checksum mismatch");
  }
  detail::ByteReader r(body, ErrorCode::kCorruptRecord);
  if (std::memcmp(r.raw(4).data(), kStateMagic, 4) != 0) {
    throw Error(ErrorCode::kCorruptRecord, "bad checkpoint magic");
  }
  CheckpointState s;
  s.domain.domain_id = r.u32();
  s.n_domains = r.u32();
  s.step = r.u64();
  const int dim = r.u8();
  const std::uint64_t n = r.u64();
  if (n > r.remaining()) throw Error(ErrorCode::kCorruptRecord, "bad node count");
  auto refine = r.raw(static_cast<std::size_t>(n));
  auto own = r.raw(static_cast<std::size_t>(n));
  try {
    s.domain.tree = AmrTree::build(dim, BitVector(refine.begin(), refine.end()));
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptRecord, std::string("checkpoint tree: ") + e.what());
  }
  s.domain.ownership.assign(own.begin(), own.end());
  const std::uint32_t nfields = r.u32();
  for (std::uint32_t f = 0; f < nfields; ++f) {
    std::string name = r.str();
    std::vector<double> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = r.f64();
    s.domain.fields.emplace(std::move(name), std::move(values));
  }
  if (r.remaining() != 0) throw Error(ErrorCode::kCorruptRecord, "trailing checkpoint bytes");
  if (auto v = validate_domain(s.domain)) {
    throw Error(ErrorCode::kCorruptRecord, "checkpoint domain violates " + v->invariant);
  }
  return s;
}

}  // namespace amrstore
