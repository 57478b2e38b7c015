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

#ifndef LCPINDEX_QUERY_CACHE_HPP_
#define LCPINDEX_QUERY_CACHE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "lcpindex/core.hpp"
#include "lcpindex/trie_index.hpp"
#include "lcpindex/work.hpp"

namespace lcpindex {

// Memo table of query results keyed on (query, k, mode). Lookups and
// get-or-insert are mutex-protected, so one cache can be shared by worker
// threads. Cached results are immutable.
class QueryCache {
 public:
  struct Key {
    Sequence query;
    std::uint64_t k = 0;
    QueryMode mode = QueryMode::kStrict;
    friend bool operator==(const Key&, const Key&) = default;
  };

  std::shared_ptr<const QueryResult> find(const Key& key) const;

  // Stores `result` unless the key is already present; returns whichever
  // value the cache holds afterwards.
  std::shared_ptr<const QueryResult> insert(Key key, QueryResult result);

  std::size_t size() const;
  void clear();

 private:
  struct KeyHash {
    std::size_t operator()(const Key& key) const;
  };

  mutable std::mutex mu_;
  std::unordered_map<Key, std::shared_ptr<const QueryResult>, KeyHash> map_;
};

// index.query() through `cache`. A hit returns the stored result and counts
// as a query and a cache hit in `work` with no scan work.
QueryResult memoized_query(const TrieIndex& index, SequenceView q,
                           std::size_t k, QueryMode mode, QueryCache& cache,
                           WorkReport* work = nullptr);

}  // namespace lcpindex

#endif  // LCPINDEX_QUERY_CACHE_HPP_
