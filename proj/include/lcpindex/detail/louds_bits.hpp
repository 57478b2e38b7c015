// Copyright 2026 The lcpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LCPINDEX_DETAIL_LOUDS_BITS_HPP_
#define LCPINDEX_DETAIL_LOUDS_BITS_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lcpindex::detail {

// Append-only bit vector with select0. Used for the level-order unary degree
// sequence of the trie: node v contributes deg(v) one-bits then a zero.
class LoudsBits {
 public:
  static constexpr std::size_t kZeroSampleRate = 512;

  void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }

  void push_back(bool bit) {
    if (size_ % 64 == 0) words_.push_back(0);
    if (bit) {
      words_.back() |= std::uint64_t{1} << (size_ % 64);
    } else {
      if (zeros_ % kZeroSampleRate == 0) samples_.push_back(size_);
      ++zeros_;
    }
    ++size_;
  }

  // Pads the tail with ones so select0 never reports a padding bit.
  void finish() {
    if (size_ % 64 != 0) words_.back() |= ~std::uint64_t{0} << (size_ % 64);
    words_.shrink_to_fit();
    samples_.shrink_to_fit();
  }

  std::size_t size() const { return size_; }
  std::size_t zeros() const { return zeros_; }

  bool operator[](std::size_t pos) const {
    return (words_[pos / 64] >> (pos % 64)) & 1u;
  }

  // Position of the zero with 0-based rank `rank`. Requires rank < zeros().
  std::size_t select0(std::size_t rank) const {
    const std::size_t sample = rank / kZeroSampleRate;
    std::size_t pos = samples_[sample];
    std::size_t remaining = rank - sample * kZeroSampleRate;
    std::size_t w = pos / 64;
    std::uint64_t inv = ~words_[w] & (~std::uint64_t{0} << (pos % 64));
    for (;;) {
      const auto count = static_cast<std::size_t>(std::popcount(inv));
      if (remaining < count) return w * 64 + select_in_word(inv, remaining);
      remaining -= count;
      inv = ~words_[++w];
    }
  }

  // Position of the first zero at or after `pos`. Requires one to exist.
  std::size_t next_zero(std::size_t pos) const {
    std::size_t w = pos / 64;
    std::uint64_t inv = ~words_[w] & (~std::uint64_t{0} << (pos % 64));
    while (inv == 0) inv = ~words_[++w];
    return w * 64 + static_cast<std::size_t>(std::countr_zero(inv));
  }

  std::size_t memory_bytes() const {
    return words_.capacity() * sizeof(std::uint64_t) +
           samples_.capacity() * sizeof(std::uint64_t);
  }

 private:
  static std::size_t select_in_word(std::uint64_t x, std::size_t rank) {
    std::size_t base = 0;
    for (;;) {
      const auto in_byte = static_cast<std::size_t>(std::popcount(x & 0xFFu));
      if (rank < in_byte) break;
      rank -= in_byte;
      x >>= 8;
      base += 8;
    }
    for (; rank > 0; --rank) x &= x - 1;
    return base + static_cast<std::size_t>(std::countr_zero(x));
  }

  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> samples_;
  std::size_t size_ = 0;
  std::size_t zeros_ = 0;
};

}  // namespace lcpindex::detail

#endif  // LCPINDEX_DETAIL_LOUDS_BITS_HPP_
