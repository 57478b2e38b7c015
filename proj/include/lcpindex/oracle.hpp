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

#ifndef LCPINDEX_ORACLE_HPP_
#define LCPINDEX_ORACLE_HPP_

// Brute-force reference answers. Nothing here touches the trie or the
// bucketed engine; every similarity is recomputed by a direct scan.

#include <cstddef>
#include <optional>
#include <vector>

#include "lcpindex/core.hpp"
#include "lcpindex/trie_index.hpp"

namespace lcpindex::oracle {

// Exactly min(k, N) hits sorted by (lcp desc, index asc). Each lcp is
// computed by an inline loop and cross-checked against lcpindex::lcp;
// disagreement throws InvariantViolation.
std::vector<Hit> top_k(const Dataset& dataset, SequenceView q, std::size_t k);

// For two duplicate-free datasets of equal size and shape, returns a query
// whose top-1 answers differ (an item present in one and absent from the
// other), or nullopt when both hold the same set of sequences. Throws
// InvalidInput if the preconditions do not hold.
std::optional<Sequence> distinguish(const Dataset& first, const Dataset& second);

}  // namespace lcpindex::oracle

#endif  // LCPINDEX_ORACLE_HPP_
