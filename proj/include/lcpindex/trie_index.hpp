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

#ifndef LCPINDEX_TRIE_INDEX_HPP_
#define LCPINDEX_TRIE_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcpindex/core.hpp"
#include "lcpindex/detail/louds_bits.hpp"
#include "lcpindex/detail/range_min.hpp"
#include "lcpindex/work.hpp"

namespace lcpindex {

enum class QueryMode : std::uint8_t {
  // Descend, then report only items under the deepest matched node.
  kStrict = 0,
  // As strict, then backtrack through ancestors until min(k, N) hits.
  kComplete = 1,
};

std::string_view to_string(QueryMode mode);
// Accepts "strict" or "complete"; throws ConfigError otherwise.
QueryMode parse_query_mode(std::string_view text);

struct Hit {
  ItemIndex item = 0;
  LcpValue lcp = 0;
  friend bool operator==(const Hit&, const Hit&) = default;
};

// Canonical result order: lcp descending, then item index ascending.
inline bool canonical_less(const Hit& a, const Hit& b) {
  return a.lcp != b.lcp ? a.lcp > b.lcp : a.item < b.item;
}

struct QueryResult {
  std::vector<Hit> hits;
  std::uint32_t matched_depth = 0;
  QueryMode mode = QueryMode::kStrict;
  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Little-endian byte encoding: mode (u8), matched_depth (u32), hit count
// (u32), then (item u32, lcp u32) pairs. Equal results have equal bytes.
std::string serialize(const QueryResult& result);

using NodeId = std::uint32_t;

// Read-only view of one trie node.
struct NodeView {
  NodeId id = 0;
  std::uint32_t depth = 0;
  Symbol label = 0;  // symbol on the edge from the parent; 0 at the root
  std::uint32_t subtree_size = 0;
  NodeId first_child = 0;
  std::uint32_t child_count = 0;
  std::span<const ItemIndex> posting;
};

struct Descent {
  NodeId node = 0;
  std::uint32_t depth = 0;
  std::vector<NodeId> path;  // root first; path.size() == depth + 1
};

// Uncompressed trie over a fixed-length dataset.
//
// Nodes carry dense ids assigned in level order with children visited in
// ascending symbol order, so:
//   * the children of a node have consecutive ids and ascending labels;
//   * the nodes of one level appear in lexicographic order of their prefix;
//   * the items under any node form one contiguous slice of the
//     concatenated posting lists.
// Child structure is a level-order unary degree bit sequence; each node
// stores its edge label and the offset of its first item. The built index is
// immutable and safe to query from any number of threads.
class TrieIndex {
 public:
  // Snapshot header constants.
  static constexpr char kMagic[4] = {'L', 'C', 'P', 'I'};
  static constexpr std::uint32_t kVersion = 1;

  static TrieIndex build(const Dataset& dataset);

  // Reads a snapshot written by save(). Throws InvalidInput naming the
  // offending header field or node id on any inconsistency.
  static TrieIndex load(std::istream& in);
  void save(std::ostream& out) const;
  std::string snapshot_bytes() const;

  TrieIndex(TrieIndex&&) noexcept = default;
  TrieIndex& operator=(TrieIndex&&) noexcept = default;
  TrieIndex(const TrieIndex&) = delete;
  TrieIndex& operator=(const TrieIndex&) = delete;

  std::size_t size() const { return item_count_; }
  std::uint32_t length() const { return length_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::size_t node_count() const { return labels_.size(); }

  static constexpr NodeId root() { return 0; }
  NodeView node(NodeId v) const;
  std::uint32_t depth(NodeId v) const;
  std::uint32_t subtree_size(NodeId v) const;
  // Items under `v` in level-order traversal order.
  std::span<const ItemIndex> subtree_items(NodeId v) const;
  std::span<const ItemIndex> posting(NodeId v) const;
  std::optional<NodeId> child(NodeId v, Symbol symbol) const;

  // Follows `q` from the root while an edge exists. Every item outside the
  // returned node's subtree has lcp(q, item) < depth.
  Descent descend(SequenceView q, WorkReport* work = nullptr) const;

  // Up to k items from the subtree of `v`, in level-order traversal order,
  // stopping exactly at k. Returns the whole subtree when it holds <= k.
  std::vector<ItemIndex> collect_top_k(NodeId v, std::size_t k,
                                       WorkReport* work = nullptr) const;

  // Top-k by lcp with ties broken by item index. Throws InvalidInput on a
  // malformed query or k == 0.
  QueryResult query(SequenceView q, std::size_t k, QueryMode mode,
                    WorkReport* work = nullptr) const;

  // Rebuilds the indexed dataset from leaf paths and posting lists.
  Dataset reconstruct_dataset() const;

  // Checks every structural invariant; returns human-readable violations.
  std::vector<std::string> check_invariants() const;

  // Bytes held by the index structures (capacity, not size).
  std::size_t memory_bytes() const;

 private:
  TrieIndex() = default;

  struct ChildRange {
    NodeId first;
    std::uint32_t count;
  };
  ChildRange children(NodeId v) const;
  std::size_t item_end(NodeId v) const;
  void check_query(SequenceView q, std::size_t k) const;
  void finalize();

  std::uint32_t length_ = 0;
  std::uint32_t alphabet_size_ = 0;
  std::size_t item_count_ = 0;
  detail::LoudsBits louds_;
  std::vector<Symbol> labels_;
  std::vector<std::uint32_t> item_begin_;
  // level_begin_[l] = id of the first node at depth l; size length_ + 2.
  std::vector<NodeId> level_begin_;
  // Item indices of all leaves, concatenated in leaf id order.
  std::vector<ItemIndex> items_;
  detail::RangeMin item_min_;
};

}  // namespace lcpindex

#endif  // LCPINDEX_TRIE_INDEX_HPP_
