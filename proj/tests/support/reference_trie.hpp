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

#ifndef LCPINDEX_TESTS_SUPPORT_REFERENCE_TRIE_HPP_
#define LCPINDEX_TESTS_SUPPORT_REFERENCE_TRIE_HPP_

// Literal pointer trie built by sequential insertion, one node object per
// trie node, children in a hash map whose hash is salted by a caller seed.
// Used to cross-check the frozen index: node ids, postings, subtree sizes,
// breadth-first collection order and snapshot bytes must not depend on the
// salt or on how the trie was built.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lcpindex/core.hpp"

namespace lcpindex::testing {

class ReferenceTrie {
 public:
  struct Node {
    std::uint32_t depth = 0;
    std::unordered_map<Symbol, std::unique_ptr<Node>, std::function<std::size_t(Symbol)>>
        children;
    std::vector<ItemIndex> posting;
    std::size_t subtree_size = 0;

    explicit Node(std::uint64_t salt)
        : children(0, [salt](Symbol s) {
            return std::hash<std::uint64_t>{}((std::uint64_t{s} + 1) * 0x9E3779B97F4A7C15ull ^ salt);
          }) {}

    std::vector<std::pair<Symbol, const Node*>> sorted_children() const {
      std::vector<std::pair<Symbol, const Node*>> out;
      for (const auto& [s, c] : children) out.emplace_back(s, c.get());
      std::sort(out.begin(), out.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      return out;
    }
  };

  // Inserts items in the order given by `order` (all indices, any order).
  ReferenceTrie(const Dataset& d, const std::vector<std::size_t>& order, std::uint64_t salt)
      : root_(std::make_unique<Node>(salt)), n_(d.size()), length_(d.length()),
        sigma_(d.alphabet().size()) {
    for (std::size_t i : order) {
      Node* u = root_.get();
      const SequenceView s = d.item(i);
      for (std::uint32_t j = 0; j < length_; ++j) {
        auto& slot = u->children[s[j]];
        if (!slot) {
          slot = std::make_unique<Node>(salt);
          slot->depth = j + 1;
        }
        u = slot.get();
      }
      u->posting.push_back(static_cast<ItemIndex>(i));
    }
    accumulate(*root_);
  }

  ReferenceTrie(const Dataset& d, std::uint64_t salt)
      : ReferenceTrie(d, identity(d.size()), salt) {}

  const Node& root() const { return *root_; }

  // Nodes in breadth-first order, children visited in ascending symbol order.
  std::vector<const Node*> level_order() const {
    std::vector<const Node*> out{root_.get()};
    for (std::size_t head = 0; head < out.size(); ++head) {
      for (const auto& [s, c] : out[head]->sorted_children()) out.push_back(c);
    }
    return out;
  }

  std::size_t node_count() const { return level_order().size(); }

  const Node* find(SequenceView q) const {
    const Node* u = root_.get();
    for (Symbol s : q) {
      auto it = u->children.find(s);
      if (it == u->children.end()) break;
      u = it->second.get();
    }
    return u;
  }

  // Breadth-first collection from `v`, stopping exactly at k items; postings
  // are emitted in stored (ascending index) order.
  static std::vector<ItemIndex> collect(const Node& v, std::size_t k) {
    std::vector<ItemIndex> out;
    std::deque<const Node*> queue{&v};
    while (!queue.empty() && out.size() < k) {
      const Node* u = queue.front();
      queue.pop_front();
      for (ItemIndex i : u->posting) {
        if (out.size() == k) break;
        out.push_back(i);
      }
      for (const auto& [s, c] : u->sorted_children()) queue.push_back(c);
    }
    return out;
  }

  // Same byte layout as the frozen index snapshot.
  std::string snapshot() const {
    std::string b;
    b.append("LCPI", 4);
    put32(b, 1);
    put32(b, 2);
    put32(b, 4);
    put32(b, 4);
    put64(b, n_);
    put32(b, length_);
    put32(b, sigma_);
    const auto nodes = level_order();
    put64(b, nodes.size());
    std::uint32_t next_id = 1;
    for (const Node* u : nodes) {
      put32(b, u->depth);
      std::vector<ItemIndex> posting = u->posting;
      std::sort(posting.begin(), posting.end());
      put32(b, static_cast<std::uint32_t>(posting.size()));
      for (ItemIndex i : posting) put32(b, i);
      const auto kids = u->sorted_children();
      put32(b, static_cast<std::uint32_t>(kids.size()));
      for (const auto& [s, c] : kids) {
        b.push_back(static_cast<char>(s & 0xFF));
        b.push_back(static_cast<char>(s >> 8));
        put32(b, next_id++);
      }
    }
    return b;
  }

 private:
  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
  }

  static std::size_t accumulate(Node& u) {
    std::sort(u.posting.begin(), u.posting.end());
    u.subtree_size = u.posting.size();
    for (auto& [s, c] : u.children) u.subtree_size += accumulate(*c);
    return u.subtree_size;
  }

  static void put32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  static void put64(std::string& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }

  std::unique_ptr<Node> root_;
  std::size_t n_;
  std::uint32_t length_;
  std::uint32_t sigma_;
};

}  // namespace lcpindex::testing

#endif  // LCPINDEX_TESTS_SUPPORT_REFERENCE_TRIE_HPP_
