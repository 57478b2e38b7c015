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

#include "lcpindex/query_cache.hpp"

#include <utility>

namespace lcpindex {

std::size_t QueryCache::KeyHash::operator()(const Key& key) const {
  // FNV-1a; deterministic across runs.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (Symbol s : key.query) mix(s);
  mix(key.k);
  mix(static_cast<std::uint64_t>(key.mode));
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const QueryResult> QueryCache::find(const Key& key) const {
  std::lock_guard lock(mu_);
  auto it = map_.find(key);
  return it == map_.end() ? nullptr : it->second;
}

std::shared_ptr<const QueryResult> QueryCache::insert(Key key,
                                                      QueryResult result) {
  auto value = std::make_shared<const QueryResult>(std::move(result));
  std::lock_guard lock(mu_);
  auto [it, inserted] = map_.try_emplace(std::move(key), std::move(value));
  return it->second;
}

std::size_t QueryCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

void QueryCache::clear() {
  std::lock_guard lock(mu_);
  map_.clear();
}

QueryResult memoized_query(const TrieIndex& index, SequenceView q,
                           std::size_t k, QueryMode mode, QueryCache& cache,
                           WorkReport* work) {
  QueryCache::Key key{Sequence(q.begin(), q.end()), k, mode};
  if (auto hit = cache.find(key)) {
    if (work != nullptr) {
      ++work->queries;
      ++work->cache_hits;
    }
    return *hit;
  }
  QueryResult computed = index.query(q, k, mode, work);
  return *cache.insert(std::move(key), std::move(computed));
}

}  // namespace lcpindex
