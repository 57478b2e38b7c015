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

#ifndef LCPINDEX_DETAIL_RANGE_MIN_HPP_
#define LCPINDEX_DETAIL_RANGE_MIN_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lcpindex::detail {

// Range-minimum index over an immutable array of 32-bit values: in-block
// scans plus a sparse table over block minima. Used to enumerate the k
// smallest values of a union of ranges in ascending order without touching
// the rest of the range.
class RangeMin {
 public:
  static constexpr std::size_t kBlock = 32;

  using Range = std::pair<std::size_t, std::size_t>;  // half-open

  RangeMin() = default;
  explicit RangeMin(std::span<const std::uint32_t> values);

  // Position of the minimum in [lo, hi). Requires lo < hi <= size.
  std::size_t argmin(std::size_t lo, std::size_t hi) const;

  // Appends the `count` smallest values found in `ranges` to `out` in
  // ascending order. Ranges must be disjoint; empty ones are skipped. Returns
  // the number of values appended (less than `count` only if the ranges hold
  // fewer values).
  std::size_t smallest(std::span<const Range> ranges, std::size_t count,
                       std::vector<std::uint32_t>& out) const;

  std::size_t memory_bytes() const;

 private:
  std::size_t scan(std::size_t lo, std::size_t hi) const;
  std::size_t better(std::size_t a, std::size_t b) const {
    return values_[b] < values_[a] ? b : a;
  }

  std::span<const std::uint32_t> values_;
  // table_[j][b] = position of the minimum over blocks [b, b + 2^j).
  std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace lcpindex::detail

#endif  // LCPINDEX_DETAIL_RANGE_MIN_HPP_
