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

#include "amrstore/boolcodec.hpp"

#include <array>
#include <limits>

#include "amrstore/error.hpp"

namespace amrstore {

namespace {

constexpr std::size_t kBase = 26;

std::size_t numeral_length(std::size_t value) {
  std::size_t len = 1;
  while (value >= kBase) {
    value /= kBase;
    ++len;
  }
  return len;
}

void append_numeral(std::string& out, std::size_t value) {
  std::array<char, 16> digits{};
  std::size_t len = 0;
  do {
    digits[len++] = static_cast<char>(value % kBase);
    value /= kBase;
  } while (value != 0);
  for (std::size_t i = len; i-- > 1;) out.push_back(static_cast<char>('a' + digits[i]));
  out.push_back(static_cast<char>('A' + digits[0]));
}

template <typename RunFn>
void for_each_run(const BitVector& bits, RunFn&& fn) {
  const std::size_t n = bits.size();
  std::size_t start = 0;
  while (start < n) {
    const bool v = bits[start];
    std::size_t end = start + 1;
    while (end < n && bits[end] == v) ++end;
    fn(end - start);
    start = end;
  }
}

}  // namespace

std::size_t encoded_length(const BitVector& bits) {
  if (bits.empty()) return 0;
  std::size_t len = 1;
  for_each_run(bits, [&](std::size_t run) { len += numeral_length(run - 1); });
  return len;
}

std::string encode_bools(const BitVector& bits) {
  std::string out;
  if (bits.empty()) return out;
  out.reserve(encoded_length(bits));
  out.push_back(bits[0] ? '1' : '0');
  for_each_run(bits, [&](std::size_t run) { append_numeral(out, run - 1); });
  return out;
}

BitVector decode_bools(std::string_view text) {
  BitVector out;
  if (text.empty()) return out;
  if (text[0] != '0' && text[0] != '1') {
    throw Error(ErrorCode::kMalformedEncoding,
                "first character must be '0' or '1'");
  }
  bool value = text[0] == '1';
  std::size_t acc = 0;
  bool in_numeral = false;
  for (std::size_t pos = 1; pos < text.size(); ++pos) {
    const char c = text[pos];
    std::size_t digit;
    bool final_digit;
    if (c >= 'a' && c <= 'z') {
      digit = static_cast<std::size_t>(c - 'a');
      final_digit = false;
    } else if (c >= 'A' && c <= 'Z') {
      digit = static_cast<std::size_t>(c - 'A');
      final_digit = true;
    } else {
      throw Error(ErrorCode::kMalformedEncoding,
                  "illegal character at offset " + std::to_string(pos));
    }
    if (!in_numeral && digit == 0 && !final_digit) {
      throw Error(ErrorCode::kMalformedEncoding,
                  "numeral with leading zero digit at offset " +
                      std::to_string(pos));
    }
    if (acc > (std::numeric_limits<std::size_t>::max() - digit) / kBase) {
      throw Error(ErrorCode::kMalformedEncoding,
                  "run length overflows at offset " + std::to_string(pos));
    }
    acc = acc * kBase + digit;
    in_numeral = true;
    if (final_digit) {
      out.insert(out.end(), acc + 1, value);
      value = !value;
      acc = 0;
      in_numeral = false;
    }
  }
  if (in_numeral) {
    throw Error(ErrorCode::kMalformedEncoding,
                "last numeral has no uppercase terminator");
  }
  if (text.size() == 1) {
    throw Error(ErrorCode::kMalformedEncoding, "value marker without runs");
  }
  return out;
}

BoolCodecStats bool_stats(const BitVector& bits) {
  BoolCodecStats s;
  s.raw_bytes = bits.size();
  s.bitfield_bytes = (bits.size() + 7) / 8;
  s.encoded_bytes = encode_bools(bits).size();
  if (s.bitfield_bytes > 0) {
    s.ratio_vs_bitfield = 1.0 - static_cast<double>(s.encoded_bytes) /
                                    static_cast<double>(s.bitfield_bytes);
  }
  return s;
}

}  // namespace amrstore
