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

#include "lcpindex/detail/range_min.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <tuple>

namespace lcpindex::detail {

RangeMin::RangeMin(std::span<const std::uint32_t> values) : values_(values) {
  const std::size_t blocks = (values.size() + kBlock - 1) / kBlock;
  if (blocks == 0) return;
  std::vector<std::uint32_t> level(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t hi = std::min(values.size(), (b + 1) * kBlock);
    level[b] = static_cast<std::uint32_t>(scan(b * kBlock, hi));
  }
  table_.push_back(std::move(level));
  for (std::size_t width = 2; width <= blocks; width *= 2) {
    const auto& prev = table_.back();
    std::vector<std::uint32_t> next(blocks - width + 1);
    for (std::size_t b = 0; b < next.size(); ++b) {
      next[b] = static_cast<std::uint32_t>(better(prev[b], prev[b + width / 2]));
    }
    table_.push_back(std::move(next));
  }
}

std::size_t RangeMin::scan(std::size_t lo, std::size_t hi) const {
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    if (values_[i] < values_[best]) best = i;
  }
  return best;
}

std::size_t RangeMin::argmin(std::size_t lo, std::size_t hi) const {
  const std::size_t first_block = lo / kBlock;
  const std::size_t last_block = (hi - 1) / kBlock;
  if (first_block == last_block) return scan(lo, hi);
  std::size_t best = scan(lo, (first_block + 1) * kBlock);
  best = better(best, scan(last_block * kBlock, hi));
  if (first_block + 1 < last_block) {
    const std::size_t b0 = first_block + 1;
    const std::size_t span = last_block - b0;
    const auto j = static_cast<std::size_t>(std::bit_width(span) - 1);
    best = better(best, table_[j][b0]);
    best = better(best, table_[j][last_block - (std::size_t{1} << j)]);
  }
  return best;
}

std::size_t RangeMin::smallest(std::span<const Range> ranges, std::size_t count,
                               std::vector<std::uint32_t>& out) const {
  // (value, position, lo, hi); the heap holds the minimum of each open range.
  using Entry = std::tuple<std::uint32_t, std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto open = [&](std::size_t lo, std::size_t hi) {
    if (lo >= hi) return;
    const std::size_t pos = argmin(lo, hi);
    heap.emplace(values_[pos], pos, lo, hi);
  };
  for (const auto& [lo, hi] : ranges) open(lo, hi);
  std::size_t emitted = 0;
  while (emitted < count && !heap.empty()) {
    const auto [value, pos, lo, hi] = heap.top();
    heap.pop();
    out.push_back(value);
    ++emitted;
    if (emitted == count) break;
    open(lo, pos);
    open(pos + 1, hi);
  }
  return emitted;
}

std::size_t RangeMin::memory_bytes() const {
  std::size_t bytes = table_.capacity() * sizeof(table_[0]);
  for (const auto& level : table_) {
    bytes += level.capacity() * sizeof(std::uint32_t);
  }
  return bytes;
}

}  // namespace lcpindex::detail
