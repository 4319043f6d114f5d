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

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amrstore/amr_tree.hpp"
#include "amrstore/deltacodec.hpp"

namespace amrstore {

// Self-describing post-processing object: the tree shape and ownership as
// boolcodec strings plus one delta-compressed stream per field.
struct AmrObjectPayload {
  int dim = 3;
  std::uint64_t node_count = 0;
  std::string refinement;
  std::string ownership;
  std::vector<std::pair<std::string, CompressedField>> fields;  // sorted by name
};

AmrObjectPayload encode_object(const DomainTree& dt, const DeltaOptions& options = {});

// Rebuilds the DomainTree. Throws kCorruptRecord when the arrays disagree.
DomainTree decode_object(const AmrObjectPayload& payload, std::uint32_t domain_id);

// Layout: dim u8, node_count u64, refinement str, ownership str,
// field count u32, then per field: name str, CompressedField bytes.
// Strings carry a u32 little-endian length prefix.
std::vector<std::uint8_t> serialize(const AmrObjectPayload& payload);
AmrObjectPayload deserialize_object(std::span<const std::uint8_t> bytes);

}  // namespace amrstore
