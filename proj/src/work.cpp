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

#include "lcpindex/work.hpp"

#include "lcpindex/errors.hpp"

namespace lcpindex {

WorkReport& WorkReport::merge(const WorkReport& other) {
  if (!(model == other.model)) {
    throw InvariantViolation("cannot merge work reports with different models");
  }
  queries += other.queries;
  cache_hits += other.cache_hits;
  symbols_compared += other.symbols_compared;
  items_scanned += other.items_scanned;
  nodes_visited += other.nodes_visited;
  elapsed += other.elapsed;
  return *this;
}

}  // namespace lcpindex
