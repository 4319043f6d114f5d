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
#include <string>
#include <string_view>

#include "amrstore/amr_tree.hpp"

namespace amrstore {

// Run-length boolean codec over a 52-letter alphabet.
//
// Output is '0' or '1' (value of the first run) followed by one numeral per
// run. A numeral is (run length - 1) in base 26, most significant digit
// first; non-final digits use 'a'..'z', the final digit 'A'..'Z', so the
// uppercase letter terminates the numeral. Runs alternate in value.
std::string encode_bools(const BitVector& bits);

// Inverse of encode_bools. Throws Error(kMalformedEncoding).
BitVector decode_bools(std::string_view text);

// Number of characters encode_bools would produce, without building it.
std::size_t encoded_length(const BitVector& bits);

struct BoolCodecStats {
  std::size_t raw_bytes = 0;       // one byte per boolean
  std::size_t bitfield_bytes = 0;  // ceil(n / 8)
  std::size_t encoded_bytes = 0;
  double ratio_vs_bitfield = 0.0;  // 1 - encoded / bitfield; 0 when n == 0
};

BoolCodecStats bool_stats(const BitVector& bits);

}  // namespace amrstore
