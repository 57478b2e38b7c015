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

#include "lcpindex/tal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lcpindex/errors.hpp"

namespace lcpindex {

namespace {

// Lexicographic comparison of the first `depth` symbols.
int compare_prefix(SequenceView a, SequenceView b, std::uint32_t depth) {
  for (std::uint32_t j = 0; j < depth; ++j) {
    if (a[j] != b[j]) return a[j] < b[j] ? -1 : 1;
  }
  return 0;
}

}  // namespace

TalEngine TalEngine::build(const Dataset& dataset, std::uint64_t bucket_count) {
  if (bucket_count == 0) throw InvalidInput("bucket count must be positive");
  const std::uint64_t sigma = dataset.alphabet().size();
  TalEngine e;
  e.length_ = dataset.length();
  e.alphabet_size_ = static_cast<std::uint32_t>(sigma);

  std::uint64_t buckets = 1;
  std::uint32_t d = 0;
  while (buckets < bucket_count) {
    if (d == e.length_) {
      throw InvalidInput("bucket count " + std::to_string(bucket_count) +
                         " exceeds sigma^L; prefix depth would exceed L");
    }
    if (buckets > std::numeric_limits<std::uint64_t>::max() / sigma) {
      throw InvalidInput("bucket count " + std::to_string(bucket_count) +
                         " too large");
    }
    buckets *= sigma;
    ++d;
  }
  e.depth_ = d;
  e.bucket_count_ = buckets;

  const std::size_t n = dataset.size();
  e.original_index_.resize(n);
  std::iota(e.original_index_.begin(), e.original_index_.end(), ItemIndex{0});
  std::sort(e.original_index_.begin(), e.original_index_.end(),
            [&](ItemIndex a, ItemIndex b) {
              const SequenceView sa = dataset.item(a);
              const SequenceView sb = dataset.item(b);
              auto [ia, ib] = std::ranges::mismatch(sa, sb);
              if (ia == sa.end()) return a < b;
              return *ia < *ib;
            });
  e.sorted_.reserve(n * e.length_);
  for (ItemIndex i : e.original_index_) {
    const SequenceView row = dataset.item(i);
    e.sorted_.insert(e.sorted_.end(), row.begin(), row.end());
  }

  if (buckets <= kMaxDirectoryEntries) {
    e.directory_.assign(buckets + 1, 0);
    for (std::size_t pos = 0; pos < n; ++pos) {
      ++e.directory_[e.bucket_id(e.sorted_item(pos)) + 1];
    }
    std::partial_sum(e.directory_.begin(), e.directory_.end(),
                     e.directory_.begin());
  }
  return e;
}

std::uint64_t TalEngine::bucket_id(SequenceView prefix) const {
  std::uint64_t id = 0;
  for (std::uint32_t j = 0; j < depth_; ++j) id = id * alphabet_size_ + prefix[j];
  return id;
}

TalEngine::Range TalEngine::directory_range(std::uint64_t id) const {
  return {directory_[id], directory_[id + 1]};
}

TalEngine::Range TalEngine::search_range(SequenceView prefix) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {  // first position with sorted prefix >= prefix
    const std::size_t mid = lo + (hi - lo) / 2;
    if (compare_prefix(sorted_item(mid), prefix, depth_) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::size_t first = lo;
  hi = size();
  while (lo < hi) {  // first position with sorted prefix > prefix
    const std::size_t mid = lo + (hi - lo) / 2;
    if (compare_prefix(sorted_item(mid), prefix, depth_) <= 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return {first, lo};
}

TalEngine::Range TalEngine::bucket_range(SequenceView prefix) const {
  return has_directory() ? directory_range(bucket_id(prefix))
                         : search_range(prefix);
}

std::pair<QueryResult, WorkReport> TalEngine::query(SequenceView q,
                                                    std::size_t k) const {
  if (k == 0) throw InvalidInput("k must be positive");
  if (q.size() != length_) {
    throw InvalidInput("query has length " + std::to_string(q.size()) +
                       ", expected " + std::to_string(length_));
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] >= alphabet_size_) {
      throw InvalidInput("query position " + std::to_string(j) + ": symbol " +
                         std::to_string(q[j]) + " outside alphabet of size " +
                         std::to_string(alphabet_size_));
    }
  }
  WorkReport work(work_model());
  work.queries = 1;
  QueryResult result;
  result.mode = QueryMode::kStrict;

  const auto [lo, hi] = bucket_range(q);
  std::vector<Hit> candidates;
  candidates.reserve(hi - lo);
  for (std::size_t pos = lo; pos < hi; ++pos) {
    // Every item in the bucket already shares the first d symbols.
    const SequenceView s = sorted_item(pos);
    LcpValue shared = depth_;
    while (shared < length_ && s[shared] == q[shared]) ++shared;
    work.symbols_compared += shared - depth_ + (shared < length_ ? 1 : 0);
    candidates.push_back(Hit{original_index_[pos], shared});
    ++work.items_scanned;
  }
  if (work.items_scanned > hi - lo) {
    throw InvariantViolation("range scan left its bucket");
  }
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + take,
                    candidates.end(), canonical_less);
  candidates.resize(take);
  if (!candidates.empty()) result.matched_depth = candidates.front().lcp;
  result.hits = std::move(candidates);
  return {std::move(result), work};
}

std::size_t TalEngine::memory_bytes() const {
  return sizeof(*this) + sorted_.capacity() * sizeof(Symbol) +
         original_index_.capacity() * sizeof(ItemIndex) +
         directory_.capacity() * sizeof(std::uint32_t);
}

WorkReduction work_reduction(const WorkReport& full, const WorkReport& reduced) {
  if (!(full.model == reduced.model)) {
    throw InvalidInput("work reports use different work models");
  }
  const double denom = reduced.energy_proxy_joules();
  if (denom == 0.0) {
    return WorkReduction{std::numeric_limits<double>::infinity(), true};
  }
  return WorkReduction{full.energy_proxy_joules() / denom, false};
}

double landauer_joules_per_bit(double temperature_kelvin) {
  if (!(temperature_kelvin > 0)) {
    throw InvalidInput("temperature must be positive");
  }
  return kBoltzmannJoulesPerKelvin * temperature_kelvin * std::log(2.0);
}

LandauerGap landauer_gap(double measured_joules, std::uint64_t bits,
                         double temperature_kelvin) {
  if (bits == 0) throw InvalidInput("bit count must be positive");
  LandauerGap gap;
  gap.temperature_kelvin = temperature_kelvin;
  gap.bits_processed = bits;
  gap.measured_joules = measured_joules;
  gap.minimum_joules =
      static_cast<double>(bits) * landauer_joules_per_bit(temperature_kelvin);
  gap.gap_ratio = measured_joules / gap.minimum_joules;
  return gap;
}

LandauerGap landauer_gap(const WorkReport& report, std::uint64_t bits,
                         double temperature_kelvin) {
  return landauer_gap(report.energy_proxy_joules(), bits, temperature_kelvin);
}

}  // namespace lcpindex
