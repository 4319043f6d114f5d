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

#include "amrstore/deltacodec.hpp"

#include <bit>
#include <cmath>

#include "amrstore/error.hpp"
#include "bitstream.hpp"
#include "bytes.hpp"

namespace amrstore {

namespace {

std::uint64_t prediction_bits(double father, double factor) {
  return std::bit_cast<std::uint64_t>(factor * father);
}

void check_context(const CompressedField& cf, const AmrTree& tree) {
  if (cf.total_values != tree.node_count() || cf.dim != tree.dim()) {
    throw Error(ErrorCode::kContextMismatch,
                "field encodes " + std::to_string(cf.total_values) +
                    " values in dim " + std::to_string(cf.dim) + ", tree has " +
                    std::to_string(tree.node_count()) + " nodes in dim " +
                    std::to_string(tree.dim()));
  }
  if (cf.header_bits < 1 || cf.header_bits > 6) {
    throw Error(ErrorCode::kInvalidHeaderWidth,
                "header width " + std::to_string(cf.header_bits));
  }
}

// Decodes the first `node_limit` nodes; groups are consumed in order until
// every child block below node_limit has been filled.
std::vector<double> decode_prefix(const CompressedField& cf, const AmrTree& tree,
                                  std::size_t node_limit) {
  check_context(cf, tree);
  std::vector<double> out(node_limit);
  out[0] = std::bit_cast<double>(cf.root_payload);
  const std::size_t fan = tree.children_per_node();
  detail::BitReader reader(cf.stream, cf.stream_bits);
  for (std::size_t block = 1; block < node_limit; block += fan) {
    const double father = out[tree.father(block)];
    const std::uint64_t pred = prediction_bits(father, cf.factor);
    const int removed = static_cast<int>(reader.read(cf.header_bits));
    const int kept = 64 - removed;
    for (std::size_t c = 0; c < fan; ++c) {
      const std::uint64_t residue = reader.read(kept);
      out[block + c] = std::bit_cast<double>(residue ^ pred);
    }
  }
  if (node_limit == tree.node_count() && reader.position() != cf.stream_bits) {
    throw Error(ErrorCode::kContextMismatch,
                "stream has " + std::to_string(cf.stream_bits - reader.position()) +
                    " trailing bits");
  }
  return out;
}

std::size_t nodes_up_to_level(const AmrTree& tree, int max_level) {
  if (max_level < 0 || max_level >= tree.depth()) {
    throw Error(ErrorCode::kInvalidArgument,
                "level " + std::to_string(max_level) + " outside [0, " +
                    std::to_string(tree.depth() - 1) + "]");
  }
  return tree.level_offsets()[static_cast<std::size_t>(max_level) + 1];
}

}  // namespace

CompressedField compress_field(const AmrTree& tree, std::span<const double> values,
                               const DeltaOptions& options) {
  if (values.size() != tree.node_count()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(values.size()) + " values for " +
                    std::to_string(tree.node_count()) + " nodes");
  }
  if (options.header_bits < 1 || options.header_bits > 6) {
    throw Error(ErrorCode::kInvalidHeaderWidth,
                "header width must be in [1, 6], got " +
                    std::to_string(options.header_bits));
  }
  if (!std::isfinite(options.factor) || options.factor == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "factor must be finite and nonzero");
  }

  CompressedField cf;
  cf.header_bits = options.header_bits;
  cf.dim = tree.dim();
  cf.factor = options.factor;
  cf.total_values = values.size();
  cf.root_payload = std::bit_cast<std::uint64_t>(values[0]);

  const std::size_t fan = tree.children_per_node();
  const int max_removed = (1 << options.header_bits) - 1;
  std::uint64_t residues[8];
  detail::BitWriter writer;
  for (std::size_t block = 1; block < values.size(); block += fan) {
    const std::uint64_t pred =
        prediction_bits(values[tree.father(block)], options.factor);
    std::uint64_t any = 0;
    for (std::size_t c = 0; c < fan; ++c) {
      residues[c] = std::bit_cast<std::uint64_t>(values[block + c]) ^ pred;
      any |= residues[c];
    }
    const int removed = std::min(max_removed, std::countl_zero(any));
    writer.write(static_cast<std::uint64_t>(removed), options.header_bits);
    for (std::size_t c = 0; c < fan; ++c) writer.write(residues[c], 64 - removed);
  }
  cf.stream_bits = writer.bit_length();
  cf.stream = writer.take_bytes();
  return cf;
}

std::vector<double> decompress_field(const CompressedField& cf, const AmrTree& tree) {
  return decode_prefix(cf, tree, tree.node_count());
}

std::vector<double> decompress_to_level(const CompressedField& cf, const AmrTree& tree,
                                        int max_level) {
  check_context(cf, tree);
  return decode_prefix(cf, tree, nodes_up_to_level(tree, max_level));
}

std::uint64_t stream_prefix_bits(const CompressedField& cf, const AmrTree& tree,
                                 int max_level) {
  check_context(cf, tree);
  const std::size_t fan = tree.children_per_node();
  const std::size_t groups = (nodes_up_to_level(tree, max_level) - 1) / fan;
  detail::BitReader reader(cf.stream, cf.stream_bits);
  for (std::size_t g = 0; g < groups; ++g) {
    const auto removed = reader.read(cf.header_bits);
    reader.skip(fan * (64 - removed));
  }
  return reader.position();
}

DeltaStats delta_stats(const CompressedField& cf, std::size_t input_bytes,
                       double elapsed_seconds) {
  if (!(elapsed_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "elapsed time must be positive");
  }
  DeltaStats s;
  const std::size_t fan = std::size_t{1} << cf.dim;
  if (cf.total_values > 0) {
    s.groups = static_cast<std::size_t>((cf.total_values - 1) / fan);
    s.compression_rate = 1.0 - static_cast<double>(cf.compressed_bits()) /
                                   (64.0 * static_cast<double>(cf.total_values));
  }
  detail::BitReader reader(cf.stream, cf.stream_bits);
  std::uint64_t zeros = 0;
  for (std::size_t g = 0; g < s.groups; ++g) {
    const auto removed = reader.read(cf.header_bits);
    zeros += removed;
    reader.skip(fan * (64 - removed));
  }
  if (s.groups > 0) {
    s.mean_removed_zeros = static_cast<double>(zeros) / static_cast<double>(s.groups);
  }
  s.throughput_mb_s = static_cast<double>(input_bytes) / 1.0e6 / elapsed_seconds;
  return s;
}

std::vector<std::uint8_t> serialize(const CompressedField& cf) {
  if (cf.stream.size() * 8 < cf.stream_bits) {
    throw Error(ErrorCode::kInvalidArgument, "stream shorter than its bit length");
  }
  detail::ByteWriter w;
  w.u8(static_cast<std::uint8_t>(cf.header_bits));
  w.u8(static_cast<std::uint8_t>(cf.dim));
  w.f64(cf.factor);
  w.u64(cf.total_values);
  w.u64(cf.root_payload);
  w.u64(cf.stream_bits);
  w.raw(std::span(cf.stream).first(static_cast<std::size_t>((cf.stream_bits + 7) / 8)));
  return w.take();
}

CompressedField deserialize_field(std::span<const std::uint8_t> bytes,
                                  std::size_t* consumed) {
  detail::ByteReader r(bytes, ErrorCode::kStreamTruncated);
  CompressedField cf;
  cf.header_bits = r.u8();
  cf.dim = r.u8();
  cf.factor = r.f64();
  cf.total_values = r.u64();
  cf.root_payload = r.u64();
  cf.stream_bits = r.u64();
  if (cf.header_bits < 1 || cf.header_bits > 6) {
    throw Error(ErrorCode::kInvalidHeaderWidth,
                "header width " + std::to_string(cf.header_bits));
  }
  if (cf.dim < 1 || cf.dim > 3) {
    throw Error(ErrorCode::kInvalidArgument, "dim " + std::to_string(cf.dim));
  }
  if (cf.stream_bits > (std::uint64_t{1} << 60)) {
    throw Error(ErrorCode::kStreamTruncated, "implausible stream length");
  }
  auto payload = r.raw(static_cast<std::size_t>((cf.stream_bits + 7) / 8));
  cf.stream.assign(payload.begin(), payload.end());
  if (consumed) *consumed = r.position();
  return cf;
}

}  // namespace amrstore
