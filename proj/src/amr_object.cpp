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

#include "amrstore/amr_object.hpp"

#include "amrstore/boolcodec.hpp"
#include "amrstore/error.hpp"
#include "bytes.hpp"

namespace amrstore {

AmrObjectPayload encode_object(const DomainTree& dt, const DeltaOptions& options) {
  require_valid_domain(dt);
  AmrObjectPayload p;
  p.dim = dt.tree.dim();
  p.node_count = dt.tree.node_count();
  p.refinement = encode_bools(dt.tree.refinement());
  p.ownership = encode_bools(dt.ownership);
  for (const auto& [name, values] : dt.fields) {
    p.fields.emplace_back(name, compress_field(dt.tree, values, options));
  }
  return p;
}

DomainTree decode_object(const AmrObjectPayload& payload, std::uint32_t domain_id) {
  try {
    DomainTree dt;
    dt.domain_id = domain_id;
    dt.tree = AmrTree::build(payload.dim, decode_bools(payload.refinement));
    dt.ownership = decode_bools(payload.ownership);
    if (dt.tree.node_count() != payload.node_count) {
      throw Error(ErrorCode::kCorruptRecord,
                  "refinement decodes to " + std::to_string(dt.tree.node_count()) +
                      " nodes, header says " + std::to_string(payload.node_count));
    }
    for (const auto& [name, cf] : payload.fields) {
      dt.fields.emplace(name, decompress_field(cf, dt.tree));
    }
    require_valid_domain(dt);
    return dt;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptRecord) throw;
    throw Error(ErrorCode::kCorruptRecord, std::string("AMR object: ") + e.what());
  }
}

std::vector<std::uint8_t> serialize(const AmrObjectPayload& payload) {
  detail::ByteWriter w;
  w.u8(static_cast<std::uint8_t>(payload.dim));
  w.u64(payload.node_count);
  w.str(payload.refinement);
  w.str(payload.ownership);
  w.u32(static_cast<std::uint32_t>(payload.fields.size()));
  for (const auto& [name, cf] : payload.fields) {
    w.str(name);
    w.raw(serialize(cf));
  }
  return w.take();
}

AmrObjectPayload deserialize_object(std::span<const std::uint8_t> bytes) {
  try {
    detail::ByteReader r(bytes, ErrorCode::kCorruptRecord);
    AmrObjectPayload p;
    p.dim = r.u8();
    p.node_count = r.u64();
    p.refinement = r.str();
    p.ownership = r.str();
    const std::uint32_t nfields = r.u32();
    for (std::uint32_t i = 0; i < nfields; ++i) {
      std::string name = r.str();
      std::size_t used = 0;
      auto rest = bytes.subspan(r.position());
      CompressedField cf = deserialize_field(rest, &used);
      r.raw(used);
      p.fields.emplace_back(std::move(name), std::move(cf));
    }
    if (r.remaining() != 0) {
      throw Error(ErrorCode::kCorruptRecord,
                  std::to_string(r.remaining()) + " trailing bytes after AMR object");
    }
    return p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptRecord) throw;
    throw Error(ErrorCode::kCorruptRecord, std::string("AMR object: ") + e.what());
  }
}

}  // namespace amrstore
