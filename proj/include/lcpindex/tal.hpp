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

#ifndef LCPINDEX_TAL_HPP_
#define LCPINDEX_TAL_HPP_

// Thermal-aware range-scan execution: items sorted lexicographically and cut
// into sigma^d prefix buckets; a query scans only the bucket that shares its
// d-symbol prefix. Work is accounted with the deterministic WorkModel rather
// than measured power.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lcpindex/core.hpp"
#include "lcpindex/trie_index.hpp"
#include "lcpindex/work.hpp"

namespace lcpindex {

class TalEngine {
 public:
  // Largest dense bucket directory; deeper configurations fall back to
  // binary search over the sorted items.
  static constexpr std::uint64_t kMaxDirectoryEntries = std::uint64_t{1} << 24;

  using Range = std::pair<std::size_t, std::size_t>;  // half-open

  // Bucket depth is the smallest d with sigma^d >= bucket_count. Throws
  // InvalidInput if bucket_count == 0 or bucket_count > sigma^L.
  static TalEngine build(const Dataset& dataset, std::uint64_t bucket_count);

  std::size_t size() const { return original_index_.size(); }
  std::uint32_t length() const { return length_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::uint32_t bucket_depth() const { return depth_; }
  // sigma^d, the effective number of buckets.
  std::uint64_t bucket_count() const { return bucket_count_; }
  bool has_directory() const { return !directory_.empty(); }
  WorkModel work_model() const { return WorkModel::for_length(length_); }

  // Original dataset index of the item at each sorted position.
  std::span<const ItemIndex> sorted_indices() const { return original_index_; }
  SequenceView sorted_item(std::size_t pos) const {
    return SequenceView(sorted_).subspan(pos * length_, length_);
  }

  // Base-sigma number of a d-symbol prefix; equals its lexicographic rank.
  std::uint64_t bucket_id(SequenceView prefix) const;
  // Range of bucket `id` from the directory. Requires has_directory().
  Range directory_range(std::uint64_t id) const;
  // Range of items whose first d symbols equal `prefix`, found by binary
  // search over the sorted items.
  Range search_range(SequenceView prefix) const;
  // Directory lookup when available, binary search otherwise.
  Range bucket_range(SequenceView prefix) const;

  // Top-k of the query's bucket by (lcp desc, index asc). Items outside the
  // bucket are never touched. result.matched_depth is the largest lcp seen
  // in the bucket (0 when it is empty). Throws InvalidInput on a malformed
  // query or k == 0.
  std::pair<QueryResult, WorkReport> query(SequenceView q, std::size_t k) const;

  std::size_t memory_bytes() const;

 private:
  TalEngine() = default;

  std::uint32_t length_ = 0;
  std::uint32_t alphabet_size_ = 0;
  std::uint32_t depth_ = 0;
  std::uint64_t bucket_count_ = 1;
  std::vector<Symbol> sorted_;
  std::vector<ItemIndex> original_index_;
  // directory_[id] .. directory_[id + 1] is bucket id's range.
  std::vector<std::uint32_t> directory_;
};

inline TalEngine build_tal(const Dataset& dataset, std::uint64_t bucket_count) {
  return TalEngine::build(dataset, bucket_count);
}

inline std::pair<QueryResult, WorkReport> tal_query(const TalEngine& engine,
                                                    SequenceView q,
                                                    std::size_t k) {
  return engine.query(q, k);
}

struct WorkReduction {
  double factor = 1.0;
  bool unbounded = false;  // the reduced run did no work
};

// full.energy / reduced.energy in work units. Throws InvalidInput if the two
// reports use different work models.
WorkReduction work_reduction(const WorkReport& full, const WorkReport& reduced);

inline constexpr double kBoltzmannJoulesPerKelvin = 1.380649e-23;

// k_B * T * ln 2. Throws InvalidInput unless temperature > 0.
double landauer_joules_per_bit(double temperature_kelvin);

struct LandauerGap {
  double temperature_kelvin = 0;
  std::uint64_t bits_processed = 0;
  double measured_joules = 0;
  double minimum_joules = 0;  // bits * k_B * T * ln 2
  double gap_ratio = 0;       // measured / minimum
};

// Throws InvalidInput unless bits > 0 and temperature > 0.
LandauerGap landauer_gap(double measured_joules, std::uint64_t bits,
                         double temperature_kelvin);
// Uses the report's energy proxy as the measured energy.
LandauerGap landauer_gap(const WorkReport& report, std::uint64_t bits,
                         double temperature_kelvin);

}  // namespace lcpindex

#endif  // LCPINDEX_TAL_HPP_
