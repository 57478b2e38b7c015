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

#include "lcpindex/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "lcpindex/errors.hpp"

namespace lcpindex::oracle {

std::vector<Hit> top_k(const Dataset& dataset, SequenceView q, std::size_t k) {
  dataset.check_sequence(q);
  if (k == 0) throw InvalidInput("k must be positive");
  std::vector<Hit> all;
  all.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const SequenceView s = dataset.item(i);
    LcpValue shared = 0;
    while (shared < s.size() && s[shared] == q[shared]) ++shared;
    if (shared != lcp(s, q)) {
      throw InvariantViolation("lcp disagrees with direct scan on item " +
                               std::to_string(i));
    }
    all.push_back(Hit{static_cast<ItemIndex>(i), shared});
  }
  std::sort(all.begin(), all.end(), [](const Hit& a, const Hit& b) {
    if (a.lcp != b.lcp) return a.lcp > b.lcp;
    return a.item < b.item;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

namespace {

std::vector<Sequence> sorted_rows(const Dataset& d, const char* name) {
  std::vector<Sequence> rows;
  rows.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    rows.emplace_back(d.item(i).begin(), d.item(i).end());
  }
  std::sort(rows.begin(), rows.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
    throw InvalidInput(std::string(name) + " dataset contains duplicates");
  }
  return rows;
}

}  // namespace

std::optional<Sequence> distinguish(const Dataset& first,
                                    const Dataset& second) {
  if (first.size() != second.size() || first.length() != second.length() ||
      !(first.alphabet() == second.alphabet())) {
    throw InvalidInput("datasets differ in size, length or alphabet");
  }
  const auto a = sorted_rows(first, "first");
  const auto b = sorted_rows(second, "second");
  std::vector<Sequence> only;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(only));
  // Equal sizes and no duplicates: first \ second is empty iff the sets are
  // equal.
  if (only.empty()) return std::nullopt;
  // The witness has lcp L with itself in one set and strictly less with
  // every item of the other, so the top-1 answers differ.
  return only.front();
}

}  // namespace lcpindex::oracle
