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

namespace amrstore {

enum class Curve { kMorton, kHilbert };

// Bit-interleaved index; axis 0 (x) takes the least significant bit of each
// group. dim * bits must not exceed 64.
std::uint64_t morton_index(std::span<const std::uint32_t> coords, int bits);

// Hilbert index via Skilling's transpose formulation. For dim 1 this is the
// coordinate itself.
std::uint64_t hilbert_index(std::span<const std::uint32_t> coords, int bits);

std::uint64_t curve_index(Curve curve, std::span<const std::uint32_t> coords, int bits);

}  // namespace amrstore
