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

#ifndef LCPINDEX_CORE_HPP_
#define LCPINDEX_CORE_HPP_

// Domain types shared by every module: symbols, sequences, datasets and the
// longest-common-prefix similarity with its induced ultrametric.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lcpindex {

using Symbol = std::uint16_t;
using ItemIndex = std::uint32_t;
using LcpValue = std::uint32_t;

using Sequence = std::vector<Symbol>;
using SequenceView = std::span<const Symbol>;

// A finite alphabet {0, ..., size-1}.
class Alphabet {
 public:
  static constexpr std::uint32_t kMinSize = 2;
  static constexpr std::uint32_t kMaxSize = 65536;

  // Throws InvalidInput unless kMinSize <= size <= kMaxSize.
  explicit Alphabet(std::uint32_t size);

  std::uint32_t size() const { return size_; }
  bool contains(std::uint32_t symbol) const { return symbol < size_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint32_t size_;
};

// An ordered, immutable collection of N fixed-length sequences. Item i is
// the i-th sequence supplied at construction. Duplicates are allowed.
//
// Items are stored row-major in a single flat buffer.
class Dataset {
 public:
  static constexpr std::size_t kMaxItems = 0xFFFFFFFFu;

  // Empty dataset. Throws InvalidInput if length == 0.
  Dataset(Alphabet alphabet, std::uint32_t length);

  // `symbols` holds N*length symbols, row-major. Every symbol is validated
  // against the alphabet; the first offending item and position are named
  // in the error.
  Dataset(Alphabet alphabet, std::uint32_t length, std::vector<Symbol> symbols);

  static Dataset from_rows(Alphabet alphabet, std::uint32_t length,
                           const std::vector<Sequence>& rows);

  const Alphabet& alphabet() const { return alphabet_; }
  std::uint32_t length() const { return length_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  SequenceView item(std::size_t index) const {
    return SequenceView(symbols_).subspan(index * length_, length_);
  }
  std::span<const Symbol> symbols() const { return symbols_; }

  // Throws InvalidInput if `q` does not have this dataset's length or holds
  // a symbol outside the alphabet. `what` names the offending input.
  void check_sequence(SequenceView q, std::string_view what = "query") const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Alphabet alphabet_;
  std::uint32_t length_;
  std::size_t size_ = 0;
  std::vector<Symbol> symbols_;
};

// Length of the longest common prefix of two equal-length sequences; 0 when
// the first symbols differ. Throws InvalidInput on a length mismatch.
LcpValue lcp(SequenceView s, SequenceView t);

// As above, additionally rejecting symbols outside `alphabet`.
LcpValue lcp(SequenceView s, SequenceView t, const Alphabet& alphabet);

// d(s, t) = L - lcp(s, t). Satisfies the strong triangle inequality
// d(s, u) <= max(d(s, t), d(t, u)).
std::uint32_t ultrametric_distance(SequenceView s, SequenceView t);
std::uint32_t ultrametric_distance(SequenceView s, SequenceView t,
                                   const Alphabet& alphabet);

}  // namespace lcpindex

#endif  // LCPINDEX_CORE_HPP_
