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
#include <vector>

#include "amrstore/amr_tree.hpp"

namespace amrstore {

// One contributor's checkpoint: the domain arrays dumped untransformed.
//
// Layout (little-endian): "CKP1", u32 domain_id, u32 n_domains, u64 step,
// u8 dim, u64 node count, refinement and ownership as one byte per node,
// u32 field count, per field a u32-prefixed name and node-count raw f64s,
// then a u64 FNV-1a checksum of everything before it.
struct CheckpointState {
  DomainTree domain;
  std::uint64_t step = 0;
  std::uint32_t n_domains = 1;
};

std::vector<std::uint8_t> serialize_state(const CheckpointState& state);

// Throws kCorruptRecord when the blob fails its checksum or does not parse.
CheckpointState deserialize_state(std::span<const std::uint8_t> bytes);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

}  // namespace amrstore
