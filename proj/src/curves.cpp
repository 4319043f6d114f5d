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

#include "amrstore/curves.hpp"

#include <array>

#include "amrstore/error.hpp"

namespace amrstore {

namespace {

void check(std::span<const std::uint32_t> coords, int bits) {
  if (coords.empty() || coords.size() > 3 || bits < 1 || bits > 32 ||
      coords.size() * static_cast<std::size_t>(bits) > 64) {
    throw Error(ErrorCode::kInvalidArgument, "curve index does not fit in 64 bits");
  }
}

}  // namespace

std::uint64_t morton_index(std::span<const std::uint32_t> coords, int bits) {
  check(coords, bits);
  const std::size_t n = coords.size();
  std::uint64_t h = 0;
  for (int b = bits - 1; b >= 0; --b) {
    for (std::size_t i = n; i-- > 0;) {
      h = (h << 1) | ((coords[i] >> b) & 1u);
    }
  }
  return h;
}

std::uint64_t hilbert_index(std::span<const std::uint32_t> coords, int bits) {
  check(coords, bits);
  const std::size_t n = coords.size();
  std::array<std::uint32_t, 3> x{};
  for (std::size_t i = 0; i < n; ++i) x[i] = coords[i];

  const std::uint32_t top = std::uint32_t{1} << (bits - 1);
  // Inverse undo.
  for (std::uint32_t q = top; q > 1; q >>= 1) {
    const std::uint32_t p = q - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        const std::uint32_t t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  // Gray encode.
  for (std::size_t i = 1; i < n; ++i) x[i] ^= x[i - 1];
  std::uint32_t t = 0;
  for (std::uint32_t q = top; q > 1; q >>= 1) {
    if (x[n - 1] & q) t ^= q - 1;
  }
  for (std::size_t i = 0; i < n; ++i) x[i] ^= t;

  std::uint64_t h = 0;
  for (int b = bits - 1; b >= 0; --b) {
    for (std::size_t i = 0; i < n; ++i) h = (h << 1) | ((x[i] >> b) & 1u);
  }
  return h;
}

std::uint64_t curve_index(Curve curve, std::span<const std::uint32_t> coords, int bits) {
  return curve == Curve::kHilbert ? hilbert_index(coords, bits) : morton_index(coords, bits);
}

}  // namespace amrstore
