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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amrstore/error.hpp"

namespace amrstore::detail {

inline std::uint64_t low_mask(int nbits) {
  return nbits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
}

// MSB-first bit packer. Trailing bits of the last byte stay zero.
class BitWriter {
 public:
  void write(std::uint64_t value, int nbits) {
    if (nbits > 32) {
      put(value >> 32, nbits - 32);
      put(value & 0xffffffffu, 32);
    } else if (nbits > 0) {
      put(value & low_mask(nbits), nbits);
    }
  }

  std::uint64_t bit_length() const { return bits_; }

  std::vector<std::uint8_t> take_bytes() {
    if (pending_ > 0) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
      pending_ = 0;
      acc_ = 0;
    }
    return std::move(bytes_);
  }

 private:
  void put(std::uint64_t value, int nbits) {
    acc_ = (acc_ << nbits) | value;
    pending_ += nbits;
    bits_ += static_cast<std::uint64_t>(nbits);
    while (pending_ >= 8) {
      pending_ -= 8;
      bytes_.push_back(static_cast<std::uint8_t>(acc_ >> pending_));
    }
    acc_ &= low_mask(pending_);
  }

  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;
  int pending_ = 0;
  std::uint64_t bits_ = 0;
};

// Reads at most `limit` bits; going past it throws kStreamTruncated.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t limit)
      : bytes_(bytes), limit_(std::min<std::uint64_t>(limit, bytes.size() * 8)) {}

  std::uint64_t read(int nbits) {
    require(static_cast<std::uint64_t>(nbits));
    if (nbits > 32) {
      const std::uint64_t hi = get(nbits - 32);
      return (hi << 32) | get(32);
    }
    return nbits > 0 ? get(nbits) : 0;
  }

  void skip(std::uint64_t nbits) {
    require(nbits);
    pos_ += nbits;
  }

  std::uint64_t position() const { return pos_; }
  std::uint64_t limit() const { return limit_; }

 private:
  void require(std::uint64_t nbits) const {
    if (nbits > limit_ - pos_) {
      throw Error(ErrorCode::kStreamTruncated,
                  "bit stream ends at bit " + std::to_string(limit_) +
                      ", need " + std::to_string(pos_ + nbits));
    }
  }

  std::uint64_t get(int nbits) {
    const std::size_t b = static_cast<std::size_t>(pos_ >> 3);
    const int off = static_cast<int>(pos_ & 7u);
    std::uint64_t w = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      w = (w << 8) | (b + j < bytes_.size() ? bytes_[b + j] : 0u);
    }
    pos_ += static_cast<std::uint64_t>(nbits);
    return (w >> (40 - off - nbits)) & low_mask(nbits);
  }

  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

}  // namespace amrstore::detail
