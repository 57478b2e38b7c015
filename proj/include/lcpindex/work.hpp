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

#ifndef LCPINDEX_WORK_HPP_
#define LCPINDEX_WORK_HPP_

#include <chrono>
#include <cstdint>

namespace lcpindex {

// Deterministic energy proxy. Reported "joules" are work units:
//   energy = items_scanned * item_cost + symbols_compared * symbol_cost
// with item_cost = 1 and symbol_cost = 1/L by default, so that a full
// L-symbol comparison costs as much as touching one item.
struct WorkModel {
  double item_cost = 1.0;
  double symbol_cost = 1.0;

  static WorkModel for_length(std::uint32_t length) {
    return WorkModel{1.0, 1.0 / static_cast<double>(length)};
  }

  friend bool operator==(const WorkModel&, const WorkModel&) = default;
};

// Work counters for a stream of queries executed by one context. Merging is
// associative; reports from different work models cannot be merged.
struct WorkReport {
  WorkModel model;
  std::uint64_t queries = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t symbols_compared = 0;
  std::uint64_t items_scanned = 0;
  std::uint64_t nodes_visited = 0;
  std::chrono::nanoseconds elapsed{0};

  WorkReport() = default;
  explicit WorkReport(WorkModel m) : model(m) {}

  double energy_proxy_joules() const {
    return static_cast<double>(items_scanned) * model.item_cost +
           static_cast<double>(symbols_compared) * model.symbol_cost;
  }

  // Throws InvariantViolation if the work models differ.
  WorkReport& merge(const WorkReport& other);
};

}  // namespace lcpindex

#endif  // LCPINDEX_WORK_HPP_
