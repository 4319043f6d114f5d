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

#include <chrono>
#include <random>

#include "amrstore/boolcodec.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace amrstore;
using testutil::bits;
using testutil::code_of;
using testutil::concat;
using testutil::repeat;

namespace {

// Runs of random length, from all singletons up to very long runs.
BitVector random_runs(std::mt19937_64& rng, std::size_t n) {
  BitVector out;
  out.reserve(n);
  bool v = rng() & 1;
  const int regime = static_cast<int>(rng() % 4);
  while (out.size() < n) {
    std::size_t len = 1;
    switch (regime) {
      case 0: len = 1; break;
      case 1: len = 1 + rng() % 8; break;
      case 2: len = 1 + rng() % 2000; break;
      default: len = (rng() % 4 == 0) ? 1 + rng() % 100000 : 1 + rng() % 30; break;
    }
    len = std::min(len, n - out.size());
    out.insert(out.end(), len, v);
    v = !v;
  }
  return out;
}

}  // namespace

TEST_SUITE("boolcodec") {
  TEST_CASE("fixed encodings") {
    CHECK(encode_bools({}) == "");
    CHECK(encode_bools(repeat(true, 5)) == "1E");
    CHECK(encode_bools(bits(" fft")) == "0BA");
    CHECK(encode_bools(concat({repeat(true, 30), repeat(false, 1)})) == "1bDA");
    CHECK(oracle::numeral(29) == "bD");
  }

  TEST_CASE("fixed decodings") {
    CHECK(decode_bools("").empty());
    CHECK(decode_bools("1E") == repeat(true, 5));
    CHECK(decode_bools("0BA") == bits("fft"));
  }

  TEST_CASE("malformed input") {
    for (const char* bad : {"0xyz", "2A", "A", "0", "1E!", "0aa", "0aA", "1E1A", "0b"}) {
      CAPTURE(bad);
      CHECK(code_of([&] { decode_bools(bad); }) == ErrorCode::kMalformedEncoding);
    }
  }

  TEST_CASE("one million trues") {
    const auto b = repeat(true, 1000000);
    const std::string expect = "1" + oracle::numeral(999999);
    CHECK(expect.size() == 6);
    CHECK(encode_bools(b) == expect);
    const auto s = bool_stats(b);
    CHECK(s.raw_bytes == 1000000);
    CHECK(s.bitfield_bytes == 125000);
    CHECK(s.encoded_bytes == 6);
    CHECK(s.ratio_vs_bitfield == doctest::Approx(1.0 - 6.0 / 125000.0));
  }

  TEST_CASE("alternating bits cost more than a bitfield") {
    const auto s = bool_stats(bits("tftftftf"));
    CHECK(s.encoded_bytes == 9);
    CHECK(s.bitfield_bytes == 1);
    CHECK(s.ratio_vs_bitfield < 0.0);
    CHECK(s.ratio_vs_bitfield == doctest::Approx(-8.0));
  }

  TEST_CASE("empty stats") {
    const auto s = bool_stats({});
    CHECK(s.raw_bytes == 0);
    CHECK(s.bitfield_bytes == 0);
    CHECK(s.encoded_bytes == 0);
    CHECK(s.ratio_vs_bitfield == 0.0);
  }

  TEST_CASE("property: round trip and size law") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = trial < 10 ? static_cast<std::size_t>(trial) : rng() % 200000;
      const auto b = random_runs(rng, n);
      const std::string enc = encode_bools(b);
      CHECK(enc == oracle::encode(b));
      CHECK(decode_bools(enc) == b);
      std::size_t law = b.empty() ? 0 : 1;
      for (const auto& [v, len] : oracle::runs(b)) law += oracle::digitlen26(len - 1);
      CHECK(enc.size() == law);
      CHECK(encoded_length(b) == law);
    }
  }

  TEST_CASE("property: long runs beat the bitfield") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
      BitVector b;
      bool v = rng() & 1;
      const std::size_t runs = 1 + rng() % 50;
      for (std::size_t r = 0; r < runs; ++r) {
        b.insert(b.end(), 16 + rng() % 500, v);
        v = !v;
      }
      const auto s = bool_stats(b);
      CHECK(s.encoded_bytes < s.bitfield_bytes);
    }
  }

  TEST_CASE("encoding a million booleans is fast") {
    std::mt19937_64 rng(33);
    const auto b = random_runs(rng, 1000000);
    const auto t0 = std::chrono::steady_clock::now();
    const auto enc = encode_bools(b);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CHECK(!enc.empty());
    CHECK(ms < 100.0);
  }
}
