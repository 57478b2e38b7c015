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

#include "lcpindex/trie_index.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lcpindex/errors.hpp"

namespace lcpindex {

std::string_view to_string(QueryMode mode) {
  return mode == QueryMode::kStrict ? "strict" : "complete";
}

QueryMode parse_query_mode(std::string_view text) {
  if (text == "strict") return QueryMode::kStrict;
  if (text == "complete") return QueryMode::kComplete;
  throw ConfigError("unknown query mode '" + std::string(text) +
                    "' (expected strict or complete)");
}

namespace {

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class SnapshotReader {
 public:
  explicit SnapshotReader(std::istream& in) : in_(in) {}

  void set_context(std::string context) { context_ = std::move(context); }

  std::uint64_t read(int bytes) {
    std::array<unsigned char, 8> buf{};
    in_.read(reinterpret_cast<char*>(buf.data()), bytes);
    if (in_.gcount() != bytes) {
      throw InvalidInput("index snapshot truncated in " + context_);
    }
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
  }
  std::uint16_t u16() { return static_cast<std::uint16_t>(read(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(read(4)); }
  std::uint64_t u64() { return read(8); }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("index snapshot " + context_ + ": " + what);
  }

 private:
  std::istream& in_;
  std::string context_ = "header";
};

}  // namespace

std::string serialize(const QueryResult& result) {
  std::string out;
  out.reserve(9 + 8 * result.hits.size());
  put_u8(out, static_cast<std::uint8_t>(result.mode));
  put_u32(out, result.matched_depth);
  put_u32(out, static_cast<std::uint32_t>(result.hits.size()));
  for (const Hit& h : result.hits) {
    put_u32(out, h.item);
    put_u32(out, h.lcp);
  }
  return out;
}

TrieIndex TrieIndex::build(const Dataset& dataset) {
  TrieIndex t;
  const std::uint32_t length = dataset.length();
  const std::size_t n = dataset.size();
  t.length_ = length;
  t.alphabet_size_ = dataset.alphabet().size();
  t.item_count_ = n;

  // Items in lexicographic order; equal sequences keep index order.
  std::vector<ItemIndex> order(n);
  std::iota(order.begin(), order.end(), ItemIndex{0});
  std::sort(order.begin(), order.end(), [&](ItemIndex a, ItemIndex b) {
    const SequenceView sa = dataset.item(a);
    const SequenceView sb = dataset.item(b);
    auto [ia, ib] = std::ranges::mismatch(sa, sb);
    if (ia == sa.end()) return a < b;
    return *ia < *ib;
  });

  // shared[i] = lcp of sorted neighbours i-1 and i. Position i opens a new
  // node at every depth greater than shared[i].
  std::vector<std::uint32_t> shared(n, 0);
  std::vector<std::size_t> opened_at(length + 1, 0);
  for (std::size_t i = 1; i < n; ++i) {
    shared[i] = lcp(dataset.item(order[i - 1]), dataset.item(order[i]));
    ++opened_at[shared[i]];
  }

  t.level_begin_.assign(length + 2, 0);
  std::size_t total = 1;
  std::size_t earlier_splits = 0;
  t.level_begin_[1] = 1;
  for (std::uint32_t l = 1; l <= length; ++l) {
    earlier_splits += opened_at[l - 1];
    const std::size_t level_nodes = n == 0 ? 0 : 1 + earlier_splits;
    total += level_nodes;
    if (total > 0xFFFFFFFFu) {
      throw InvalidInput("dataset needs more than 2^32-1 trie nodes");
    }
    t.level_begin_[l + 1] = static_cast<NodeId>(total);
  }

  t.labels_.assign(total, 0);
  t.item_begin_.assign(total, 0);
  std::vector<NodeId> cursor(t.level_begin_.begin(), t.level_begin_.end() - 1);
  ++cursor[0];  // root is already in place
  for (std::size_t i = 0; i < n; ++i) {
    const SequenceView row = dataset.item(order[i]);
    const std::uint32_t first = i == 0 ? 1 : shared[i] + 1;
    for (std::uint32_t l = first; l <= length; ++l) {
      const NodeId id = cursor[l]++;
      t.labels_[id] = row[l - 1];
      t.item_begin_[id] = static_cast<std::uint32_t>(i);
    }
  }

  // Unary degrees in id order: children of v are the next level's nodes
  // whose first item falls inside v's item range.
  t.louds_.reserve(2 * total);
  for (std::uint32_t l = 0; l <= length; ++l) {
    NodeId c = t.level_begin_[l + 1];
    const NodeId child_level_end = l < length ? t.level_begin_[l + 2] : c;
    for (NodeId v = t.level_begin_[l]; v < t.level_begin_[l + 1]; ++v) {
      const std::size_t end =
          v + 1 < t.level_begin_[l + 1] ? t.item_begin_[v + 1] : n;
      while (c < child_level_end && t.item_begin_[c] < end) {
        t.louds_.push_back(true);
        ++c;
      }
      t.louds_.push_back(false);
    }
  }
  t.items_ = std::move(order);
  t.finalize();
  return t;
}

void TrieIndex::finalize() {
  louds_.finish();
  labels_.shrink_to_fit();
  item_begin_.shrink_to_fit();
  items_.shrink_to_fit();
  item_min_ = detail::RangeMin(items_);
}

TrieIndex::ChildRange TrieIndex::children(NodeId v) const {
  const std::size_t start = v == 0 ? 0 : louds_.select0(v - 1) + 1;
  const std::size_t end = louds_.next_zero(start);
  return ChildRange{static_cast<NodeId>(start - v + 1),
                    static_cast<std::uint32_t>(end - start)};
}

std::uint32_t TrieIndex::depth(NodeId v) const {
  auto it = std::upper_bound(level_begin_.begin(), level_begin_.end(), v);
  return static_cast<std::uint32_t>(it - level_begin_.begin() - 1);
}

std::size_t TrieIndex::item_end(NodeId v) const {
  const std::uint32_t d = depth(v);
  return v + 1 < level_begin_[d + 1] ? item_begin_[v + 1] : item_count_;
}

std::uint32_t TrieIndex::subtree_size(NodeId v) const {
  return static_cast<std::uint32_t>(item_end(v) - item_begin_[v]);
}

std::span<const ItemIndex> TrieIndex::subtree_items(NodeId v) const {
  const std::size_t begin = item_begin_[v];
  return std::span<const ItemIndex>(items_).subspan(begin, item_end(v) - begin);
}

std::span<const ItemIndex> TrieIndex::posting(NodeId v) const {
  if (depth(v) != length_) return {};
  return subtree_items(v);
}

NodeView TrieIndex::node(NodeId v) const {
  const ChildRange kids = children(v);
  NodeView view;
  view.id = v;
  view.depth = depth(v);
  view.label = labels_[v];
  view.subtree_size = subtree_size(v);
  view.first_child = kids.first;
  view.child_count = kids.count;
  view.posting = posting(v);
  return view;
}

std::optional<NodeId> TrieIndex::child(NodeId v, Symbol symbol) const {
  const ChildRange kids = children(v);
  const auto first = labels_.begin() + kids.first;
  const auto last = first + kids.count;
  const auto it = std::lower_bound(first, last, symbol);
  if (it == last || *it != symbol) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

Descent TrieIndex::descend(SequenceView q, WorkReport* work) const {
  Descent result;
  result.path.reserve(length_ + 1);
  result.path.push_back(root());
  std::uint64_t compared = 0;
  NodeId v = root();
  for (std::uint32_t j = 0; j < length_; ++j) {
    ++compared;
    const auto next = child(v, q[j]);
    if (!next) break;
    v = *next;
    result.path.push_back(v);
  }
  if (compared > length_) {
    throw InvariantViolation("descent compared more than L symbols");
  }
  result.node = v;
  result.depth = static_cast<std::uint32_t>(result.path.size() - 1);
  if (work != nullptr) {
    work->symbols_compared += compared;
    work->nodes_visited += result.path.size();
  }
  return result;
}

std::vector<ItemIndex> TrieIndex::collect_top_k(NodeId v, std::size_t k,
                                                WorkReport* work) const {
  const std::span<const ItemIndex> items = subtree_items(v);
  // Level-order traversal with ascending children reaches the leaves in id
  // order, which is exactly the order of the item slice.
  const std::size_t take = std::min(k, items.size());
  std::vector<ItemIndex> out(items.begin(), items.begin() + take);
  if (work != nullptr) work->items_scanned += take;
  return out;
}

void TrieIndex::check_query(SequenceView q, std::size_t k) const {
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
}

QueryResult TrieIndex::query(SequenceView q, std::size_t k, QueryMode mode,
                             WorkReport* work) const {
  check_query(q, k);
  QueryResult result;
  result.mode = mode;
  if (work != nullptr) ++work->queries;
  if (item_count_ == 0) return result;

  const Descent found = descend(q, work);
  result.matched_depth = found.depth;
  const std::size_t want = std::min(k, item_count_);

  std::vector<std::uint32_t> picked;
  picked.reserve(want);
  auto take_tier = [&](std::span<const detail::RangeMin::Range> ranges,
                       LcpValue tier_lcp) {
    const std::size_t before = picked.size();
    item_min_.smallest(ranges, want - before, picked);
    for (std::size_t i = before; i < picked.size(); ++i) {
      result.hits.push_back(Hit{picked[i], tier_lcp});
    }
  };

  // Every item under the reached node has lcp exactly equal to its depth.
  const NodeId v = found.node;
  const std::array<detail::RangeMin::Range, 1> deepest{
      {{item_begin_[v], item_end(v)}}};
  take_tier(deepest, found.depth);

  std::uint64_t backtracked = 0;
  if (mode == QueryMode::kComplete) {
    // Items under ancestor a but not under its path child share exactly a
    // symbols with q.
    for (std::uint32_t a = found.depth; a-- > 0 && result.hits.size() < want;) {
      const NodeId outer = found.path[a];
      const NodeId inner = found.path[a + 1];
      const std::array<detail::RangeMin::Range, 2> ring{{
          {item_begin_[outer], item_begin_[inner]},
          {item_end(inner), item_end(outer)},
      }};
      take_tier(ring, a);
      ++backtracked;
    }
  }

  if (result.hits.size() > k) {
    throw InvariantViolation("collection emitted more than k items");
  }
  if (work != nullptr) {
    work->items_scanned += result.hits.size();
    work->nodes_visited += backtracked;
  }
  return result;
}

Dataset TrieIndex::reconstruct_dataset() const {
  std::vector<Symbol> symbols(item_count_ * length_);
  Sequence path(length_);
  // Depth-first walk; stack entries are (node, next child offset).
  std::vector<std::pair<NodeId, std::uint32_t>> stack{{root(), 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const std::uint32_t d = static_cast<std::uint32_t>(stack.size() - 1);
    if (d == length_) {
      for (ItemIndex item : posting(v)) {
        std::copy(path.begin(), path.end(), symbols.begin() + static_cast<std::size_t>(item) * length_);
      }
      stack.pop_back();
      continue;
    }
    const ChildRange kids = children(v);
    if (next == kids.count) {
      stack.pop_back();
      continue;
    }
    const NodeId c = kids.first + next++;
    path[d] = labels_[c];
    stack.emplace_back(c, 0);
  }
  return Dataset(Alphabet(alphabet_size_), length_, std::move(symbols));
}

std::vector<std::string> TrieIndex::check_invariants() const {
  std::vector<std::string> violations;
  auto fail = [&](std::string msg) {
    if (violations.size() < 32) violations.push_back(std::move(msg));
  };
  const std::size_t nodes = node_count();
  if (nodes > item_count_ * length_ + 1) {
    fail("node_count " + std::to_string(nodes) + " exceeds N*L+1");
  }
  if (subtree_size(root()) != item_count_) {
    fail("root subtree size " + std::to_string(subtree_size(root())) +
         " != N " + std::to_string(item_count_));
  }
  std::vector<bool> seen(item_count_, false);
  std::size_t posted = 0;
  for (NodeId v = 0; v < nodes; ++v) {
    const NodeView view = node(v);
    const std::string where = "node " + std::to_string(v) + ": ";
    std::uint64_t sum = view.posting.size();
    for (std::uint32_t c = 0; c < view.child_count; ++c) {
      const NodeId child_id = view.first_child + c;
      if (child_id >= nodes || depth(child_id) != view.depth + 1) {
        fail(where + "child " + std::to_string(child_id) + " at wrong depth");
        continue;
      }
      if (labels_[child_id] >= alphabet_size_) {
        fail(where + "child label outside alphabet");
      }
      if (c > 0 && labels_[child_id - 1] >= labels_[child_id]) {
        fail(where + "child labels not strictly ascending");
      }
      sum += subtree_size(child_id);
    }
    if (sum != view.subtree_size) {
      fail(where + "subtree size " + std::to_string(view.subtree_size) +
           " != posting + children " + std::to_string(sum));
    }
    if (!view.posting.empty() && view.depth != length_) {
      fail(where + "posting list above depth L");
    }
    if (view.depth == length_ && view.posting.empty()) {
      fail(where + "leaf with empty posting list");
    }
    for (std::size_t i = 0; i < view.posting.size(); ++i) {
      const ItemIndex item = view.posting[i];
      if (item >= item_count_ || seen[item]) {
        fail(where + "item " + std::to_string(item) + " invalid or repeated");
        continue;
      }
      seen[item] = true;
      if (i > 0 && view.posting[i - 1] >= item) {
        fail(where + "posting list not ascending");
      }
    }
    posted += view.posting.size();
  }
  if (posted != item_count_) {
    fail("posting lists hold " + std::to_string(posted) + " items, expected " +
         std::to_string(item_count_));
  }
  return violations;
}

std::size_t TrieIndex::memory_bytes() const {
  return sizeof(*this) + louds_.memory_bytes() +
         labels_.capacity() * sizeof(Symbol) +
         item_begin_.capacity() * sizeof(std::uint32_t) +
         level_begin_.capacity() * sizeof(NodeId) +
         items_.capacity() * sizeof(ItemIndex) + item_min_.memory_bytes();
}

void TrieIndex::save(std::ostream& out) const {
  constexpr std::size_t kFlushAt = 1 << 20;
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  put_u32(buf, kVersion);
  put_u32(buf, sizeof(Symbol));
  put_u32(buf, sizeof(ItemIndex));
  put_u32(buf, sizeof(NodeId));
  put_u64(buf, item_count_);
  put_u32(buf, length_);
  put_u32(buf, alphabet_size_);
  put_u64(buf, node_count());
  for (NodeId v = 0; v < node_count(); ++v) {
    const NodeView view = node(v);
    put_u32(buf, view.depth);
    put_u32(buf, static_cast<std::uint32_t>(view.posting.size()));
    for (ItemIndex item : view.posting) put_u32(buf, item);
    put_u32(buf, view.child_count);
    for (std::uint32_t c = 0; c < view.child_count; ++c) {
      put_u16(buf, labels_[view.first_child + c]);
      put_u32(buf, view.first_child + c);
    }
    if (buf.size() >= kFlushAt) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::string TrieIndex::snapshot_bytes() const {
  std::ostringstream out(std::ios::binary);
  save(out);
  return std::move(out).str();
}

TrieIndex TrieIndex::load(std::istream& in) {
  SnapshotReader r(in);
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || !std::equal(magic, magic + 4, kMagic)) {
    r.fail("bad magic (not an index snapshot)");
  }
  if (const auto v = r.u32(); v != kVersion) {
    r.fail("unsupported version " + std::to_string(v));
  }
  if (r.u32() != sizeof(Symbol) || r.u32() != sizeof(ItemIndex) ||
      r.u32() != sizeof(NodeId)) {
    r.fail("unsupported integer widths");
  }
  TrieIndex t;
  const std::uint64_t n = r.u64();
  t.length_ = r.u32();
  t.alphabet_size_ = r.u32();
  const std::uint64_t nodes = r.u64();
  if (n > Dataset::kMaxItems) r.fail("item count too large");
  if (t.length_ == 0) r.fail("sequence length 0");
  if (t.alphabet_size_ < Alphabet::kMinSize ||
      t.alphabet_size_ > Alphabet::kMaxSize) {
    r.fail("alphabet size " + std::to_string(t.alphabet_size_) + " invalid");
  }
  if (nodes == 0 || nodes > n * t.length_ + 1 || nodes > 0xFFFFFFFFu) {
    r.fail("node count " + std::to_string(nodes) + " inconsistent with N*L+1");
  }
  t.item_count_ = n;

  std::vector<bool> seen(n, false);
  t.labels_.push_back(0);
  t.level_begin_.assign(t.length_ + 2, static_cast<NodeId>(nodes));
  t.level_begin_[0] = 0;
  std::uint64_t next_id = 1;
  std::uint32_t level = 0;
  for (std::uint64_t v = 0; v < nodes; ++v) {
    r.set_context("node " + std::to_string(v));
    if (v >= next_id) r.fail("not referenced by any parent");
    while (level + 1 <= t.length_ && t.level_begin_[level + 1] <= v) ++level;
    const std::uint32_t d = r.u32();
    if (d != level) {
      r.fail("depth " + std::to_string(d) + ", expected " + std::to_string(level));
    }
    const std::uint32_t posting_len = r.u32();
    const bool leaf = d == t.length_;
    if (leaf != (posting_len > 0)) r.fail("posting list must appear exactly at depth L");
    t.item_begin_.push_back(static_cast<std::uint32_t>(t.items_.size()));
    for (std::uint32_t i = 0; i < posting_len; ++i) {
      const std::uint32_t item = r.u32();
      if (item >= n || seen[item]) {
        r.fail("item " + std::to_string(item) + " out of range or repeated");
      }
      if (i > 0 && t.items_.back() >= item) r.fail("posting list not ascending");
      seen[item] = true;
      t.items_.push_back(item);
    }
    const std::uint32_t child_count = r.u32();
    if (leaf && child_count != 0) r.fail("leaf with children");
    if (!leaf && child_count == 0 && n != 0) r.fail("internal node without children");
    if (child_count > t.alphabet_size_) r.fail("more children than symbols");
    if (child_count > 0 && t.level_begin_[d + 1] == nodes) {
      t.level_begin_[d + 1] = static_cast<NodeId>(next_id);
    }
    for (std::uint32_t c = 0; c < child_count; ++c) {
      const Symbol symbol = r.u16();
      const std::uint32_t child_id = r.u32();
      if (symbol >= t.alphabet_size_) r.fail("child symbol outside alphabet");
      if (c > 0 && t.labels_.back() >= symbol) r.fail("child symbols not ascending");
      if (child_id != next_id) {
        r.fail("child id " + std::to_string(child_id) + ", expected " +
               std::to_string(next_id) + " (level order)");
      }
      if (next_id >= nodes) r.fail("more children than declared nodes");
      t.labels_.push_back(symbol);
      ++next_id;
      t.louds_.push_back(true);
    }
    t.louds_.push_back(false);
  }
  r.set_context("trailer");
  if (next_id != nodes) r.fail("declared node count exceeds nodes present");
  if (t.items_.size() != n) r.fail("posting lists do not cover every item");
  if (!r.at_end()) r.fail("trailing bytes after last node");

  t.louds_.finish();
  // Internal nodes start where their first child starts.
  for (NodeId v = static_cast<NodeId>(nodes); v-- > 0;) {
    const ChildRange kids = t.children(v);
    if (kids.count > 0) t.item_begin_[v] = t.item_begin_[kids.first];
  }
  t.finalize();
  return t;
}

}  // namespace lcpindex
