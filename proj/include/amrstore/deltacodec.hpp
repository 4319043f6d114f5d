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
#include <span>
#include <vector>

#include "amrstore/amr_tree.hpp"

namespace amrstore {

struct DeltaOptions {
  int header_bits = 4;  // k, in [1, 6]
  double factor = 1.0;  // father-value multiplier used as the prediction
};

// Father-son XOR delta stream for one float64 field.
//
// The root value is stored raw. Then, for every refined node in traversal
// order, one group record: a k-bit count n of removed leading zeros followed
// by the 2^dim son residues, each truncated to its low (64 - n) bits,
// most significant bit first. A residue is bits(son) XOR bits(factor * father).
struct CompressedField {
  int header_bits = 4;
  int dim = 3;
  double factor = 1.0;
  std::uint64_t total_values = 0;
  std::uint64_t root_payload = 0;
  std::uint64_t stream_bits = 0;
  std::vector<std::uint8_t> stream;

  std::uint64_t compressed_bits() const { return 64 + stream_bits; }
};

// Throws kLengthMismatch, kInvalidHeaderWidth, kInvalidArgument (factor).
CompressedField compress_field(const AmrTree& tree, std::span<const double> values,
                               const DeltaOptions& options = {});

// Throws kContextMismatch, kStreamTruncated.
std::vector<double> decompress_field(const CompressedField& cf, const AmrTree& tree);

// Values of every node at level <= max_level (a prefix of traversal order),
// reading only the first stream_prefix_bits(cf, tree, max_level) bits.
std::vector<double> decompress_to_level(const CompressedField& cf, const AmrTree& tree,
                                        int max_level);

// Stream bits covering all groups whose fathers sit above `max_level`.
// Walks the group headers only; residue bits are skipped, never decoded.
std::uint64_t stream_prefix_bits(const CompressedField& cf, const AmrTree& tree,
                                 int max_level);

struct DeltaStats {
  double compression_rate = 0.0;  // 1 - compressed_bits / (64 * total_values)
  double mean_removed_zeros = 0.0;
  std::size_t groups = 0;
  double throughput_mb_s = 0.0;
};

// Requires elapsed_seconds > 0 (kInvalidArgument otherwise).
DeltaStats delta_stats(const CompressedField& cf, std::size_t input_bytes,
                       double elapsed_seconds);

// Portable byte layout: k u8, dim u8, factor u64, total_values u64,
// root_payload u64, stream_bits u64, then ceil(stream_bits / 8) bytes.
// All integers little-endian.
std::vector<std::uint8_t> serialize(const CompressedField& cf);
// Parses one field from the front of `bytes`; `consumed` receives its size.
CompressedField deserialize_field(std::span<const std::uint8_t> bytes,
                                  std::size_t* consumed = nullptr);

}  // namespace amrstore
