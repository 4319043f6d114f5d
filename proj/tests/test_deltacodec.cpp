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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "amrstore/deltacodec.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace amrstore;
using testutil::bits;
using testutil::code_of;
using testutil::from_bits;
using oracle::group_cost;

namespace {

// One refined node per level: a chain `depth` levels deep.
BitVector chain(int dim, int depth) {
  BitVector seq{true};
  const std::size_t c = std::size_t{1} << dim;
  for (int l = 1; l <= depth; ++l) {
    for (std::size_t r = 0; r < c; ++r) seq.push_back(l < depth && r == 0);
  }
  return seq;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = testutil::adversarial(rng);
  return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return bit_equal(a, b);
}

}  // namespace

TEST_SUITE("deltacodec") {
  TEST_CASE("identical sons reach the per-group maximum") {
    const auto seq = chain(3, 10);
    const auto tree = AmrTree::build(3, seq);
    const std::vector<double> v(seq.size(), 3.25);
    const auto cf = compress_field(tree, v);
    const auto oc = group_cost(3, seq, v, 4, 1.0);
    CHECK(oc.groups == 10);
    CHECK(cf.stream_bits == oc.bits);
    CHECK(cf.stream_bits == 10u * (4 + 8 * 49));
    const auto s = delta_stats(cf, v.size() * 8, 1.0);
    const double rate = 1.0 - (64.0 + oc.bits) / (64.0 * static_cast<double>(seq.size()));
    CHECK(s.compression_rate == doctest::Approx(rate));
    CHECK(s.compression_rate >= 0.22);
    CHECK(s.compression_rate <= (15.0 - 0.5) / 64.0);
    CHECK(s.mean_removed_zeros == 15.0);
    CHECK(bits_equal(decompress_field(cf, tree), v));
  }

  TEST_CASE("one son at 1.5 under a father at 1.0 leaves 12 zeros") {
    const auto tree = AmrTree::build(3, bits("t ffffffff"));
    std::vector<double> v(9, 1.0);
    v[3] = 1.5;
    CHECK((oracle::bits_of(1.5) ^ oracle::bits_of(1.0)) == 0x0008000000000000ull);
    CHECK(oracle::leading_zeros(0x0008000000000000ull) == 12);
    const auto cf = compress_field(tree, v);
    CHECK(cf.stream_bits == 4u + 8u * (64 - 12));
    CHECK(delta_stats(cf, 72, 1.0).mean_removed_zeros == 12.0);
    // The header is the first four bits of the stream.
    CHECK((cf.stream[0] >> 4) == 12);
    CHECK(bits_equal(decompress_field(cf, tree), v));
  }

  TEST_CASE("single node tree") {
    const auto tree = AmrTree::build(3, bits("f"));
    const std::vector<double> v{42.0};
    const auto cf = compress_field(tree, v);
    CHECK(cf.stream_bits == 0);
    CHECK(cf.stream.empty());
    CHECK(cf.compressed_bits() == 64);
    CHECK(cf.root_payload == oracle::bits_of(42.0));
    const auto s = delta_stats(cf, 8, 1.0);
    CHECK(s.compression_rate == 0.0);
    CHECK(s.groups == 0);
    CHECK(s.mean_removed_zeros == 0.0);
    CHECK(bits_equal(decompress_field(cf, tree), v));
  }

  TEST_CASE("argument errors") {
    const auto tree = AmrTree::build(2, bits("tffff"));
    const std::vector<double> v(5, 1.0);
    CHECK(code_of([&] { compress_field(tree, std::span(v).first(4)); }) ==
          ErrorCode::kLengthMismatch);
    CHECK(code_of([&] { compress_field(tree, v, {0, 1.0}); }) == ErrorCode::kInvalidHeaderWidth);
    CHECK(code_of([&] { compress_field(tree, v, {7, 1.0}); }) == ErrorCode::kInvalidHeaderWidth);
    CHECK(code_of([&] { compress_field(tree, v, {4, 0.0}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { compress_field(tree, v, {4, std::nan("")}); }) ==
          ErrorCode::kInvalidArgument);
    const auto cf = compress_field(tree, v);
    CHECK(code_of([&] { delta_stats(cf, 40, 0.0); }) == ErrorCode::kInvalidArgument);
  }

  TEST_CASE("stream cut short and wrong context") {
    const auto tree = AmrTree::build(2, bits("t tfff ffff"));
    std::mt19937_64 rng(1);
    const auto v = random_values(rng, tree.node_count());
    auto cf = compress_field(tree, v);
    auto cut = cf;
    cut.stream_bits -= 1;
    CHECK(code_of([&] { decompress_field(cut, tree); }) == ErrorCode::kStreamTruncated);

    const auto other = AmrTree::build(2, bits("tffff"));
    CHECK(code_of([&] { decompress_field(cf, other); }) == ErrorCode::kContextMismatch);
    const auto other_dim = AmrTree::build(1, bits("t tf tf ff"));
    CHECK(code_of([&] { decompress_field(cf, other_dim); }) == ErrorCode::kContextMismatch);
  }

  TEST_CASE("NaN payloads, signed zeros and subnormals survive") {
    const auto tree = AmrTree::build(2, bits("t tfff ffff"));
    std::vector<double> v = {from_bits(0x7FF0000000000001ull), from_bits(0xFFF8DEADBEEF0001ull),
                             -0.0,
                             0.0,
                             from_bits(1),
                             std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity(),
                             from_bits(0x800FFFFFFFFFFFFFull),
                             std::numeric_limits<double>::quiet_NaN()};
    for (double f : {1.0, -2.0, 1e-300, 0.125}) {
      const auto cf = compress_field(tree, v, {4, f});
      CHECK(bits_equal(decompress_field(cf, tree), v));
    }
  }

  TEST_CASE("random bit patterns gain nothing") {
    std::mt19937_64 rng(2);
    const auto seq = oracle::random_tree(rng, 3, 100000, 8, 0.5);
    const auto tree = AmrTree::build(3, seq);
    std::vector<double> v(seq.size());
    for (auto& x : v) x = from_bits(rng());
    const auto cf = compress_field(tree, v);
    const auto s = delta_stats(cf, v.size() * 8, 1.0);
    CHECK(s.groups > 1000);
    CHECK(s.mean_removed_zeros < 0.1);
    CHECK(s.compression_rate > -0.01);
    CHECK(s.compression_rate < 0.01);
  }

  TEST_CASE("partial decompression") {
    std::mt19937_64 rng(3);
    BitVector seq;
    do {
      seq = oracle::random_tree(rng, 2, 2000, 4, 0.6);
    } while (AmrTree::build(2, seq).depth() != 5);
    const auto tree = AmrTree::build(2, seq);
    const auto v = random_values(rng, seq.size());
    const auto cf = compress_field(tree, v);
    const auto full = decompress_field(cf, tree);
    const int top = tree.depth() - 1;

    CHECK(bits_equal(decompress_to_level(cf, tree, top), full));
    CHECK(bits_equal(decompress_to_level(cf, tree, 0), {v[0]}));
    const auto two = decompress_to_level(cf, tree, 2);
    const std::vector<double> expect(full.begin(),
                                     full.begin() + static_cast<long>(tree.level_offsets()[3]));
    CHECK(bits_equal(two, expect));
  }

  TEST_CASE("property: lossless over random trees, widths and factors") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const int dim = 1 + static_cast<int>(rng() % 3);
      const auto seq = oracle::random_tree(rng, dim, 20000, 9, 0.4);
      const auto tree = AmrTree::build(dim, seq);
      const auto v = random_values(rng, seq.size());
      const int k = 1 + static_cast<int>(rng() % 6);
      const double factor = (trial % 3 == 0) ? 1.0 : std::ldexp(1.0 + (rng() % 1000) / 999.0,
                                                                static_cast<int>(rng() % 20) - 10);
      const auto cf = compress_field(tree, v, {k, factor});
      CHECK(bits_equal(decompress_field(cf, tree), v));
      const auto oc = group_cost(dim, seq, v, k, factor);
      CHECK(cf.stream_bits == oc.bits);

      // The rate never beats the one-header-per-group bound.
      const double bound = ((1 << k) - 1 - static_cast<double>(k) / (1 << dim)) / 64.0;
      CHECK(delta_stats(cf, v.size() * 8, 1.0).compression_rate <= bound + 1e-12);

      // Serialization round trip.
      std::size_t used = 0;
      const auto bytes = serialize(cf);
      const auto back = deserialize_field(bytes, &used);
      CHECK(used == bytes.size());
      CHECK(bits_equal(decompress_field(back, tree), v));
    }
  }

  TEST_CASE("property: prefix length comes from headers alone") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = 1 + static_cast<int>(rng() % 3);
      const auto seq = oracle::random_tree(rng, dim, 20000, 8, 0.45);
      const auto tree = AmrTree::build(dim, seq);
      const auto v = random_values(rng, seq.size());
      const auto cf = compress_field(tree, v);
      const auto full = decompress_field(cf, tree);
      std::uint64_t prev = 0;
      for (int level = 0; level < tree.depth(); ++level) {
        const std::uint64_t prefix = stream_prefix_bits(cf, tree, level);
        CHECK(prefix >= prev);
        CHECK(prefix == group_cost(dim, seq, v, 4, 1.0, level).bits);
        prev = prefix;

        // A stream holding only the prefix still decodes the level.
        auto cut = cf;
        cut.stream_bits = prefix;
        cut.stream.resize((prefix + 7) / 8);
        const auto part = decompress_to_level(cut, tree, level);
        const std::vector<double> expect(
            full.begin(), full.begin() + static_cast<long>(tree.level_offsets()[level + 1]));
        CHECK(bits_equal(part, expect));
      }
    }
  }

  TEST_CASE("serialized layout") {
    const auto tree = AmrTree::build(1, bits("t ff"));
    const std::vector<double> v{1.0, 1.0, 1.0};
    const auto cf = compress_field(tree, v, {5, 2.0});
    const auto bytes = serialize(cf);
    REQUIRE(bytes.size() == 2 + 8 * 4 + (cf.stream_bits + 7) / 8);
    CHECK(bytes[0] == 5);
    CHECK(bytes[1] == 1);
    auto u64 = [&](std::size_t at) {
      std::uint64_t x = 0;
      for (int i = 7; i >= 0; --i) x = (x << 8) | bytes[at + i];
      return x;
    };
    CHECK(u64(2) == oracle::bits_of(2.0));
    CHECK(u64(10) == 3);
    CHECK(u64(18) == oracle::bits_of(1.0));
    CHECK(u64(26) == cf.stream_bits);

    auto cut = bytes;
    cut.pop_back();
    CHECK(code_of([&] { deserialize_field(cut); }).has_value());
  }

  TEST_CASE("throughput is input megabytes per second") {
    const auto tree = AmrTree::build(2, bits("tffff"));
    const auto cf = compress_field(tree, std::vector<double>(5, 1.0));
    CHECK(delta_stats(cf, 2000000, 0.5).throughput_mb_s == doctest::Approx(4.0));
  }
}
