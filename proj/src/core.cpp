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

#include "lcpindex/core.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "lcpindex/errors.hpp"

namespace lcpindex {

Alphabet::Alphabet(std::uint32_t size) : size_(size) {
  if (size < kMinSize || size > kMaxSize) {
    throw InvalidInput("alphabet size " + std::to_string(size) +
                       " outside [2, 65536]");
  }
}

Dataset::Dataset(Alphabet alphabet, std::uint32_t length)
    : alphabet_(alphabet), length_(length) {
  if (length == 0) throw InvalidInput("sequence length must be positive");
}

Dataset::Dataset(Alphabet alphabet, std::uint32_t length,
                 std::vector<Symbol> symbols)
    : Dataset(alphabet, length) {
  if (symbols.size() % length != 0) {
    throw InvalidInput("symbol buffer of size " +
                       std::to_string(symbols.size()) +
                       " is not a multiple of length " +
                       std::to_string(length));
  }
  const std::size_t n = symbols.size() / length;
  if (n > kMaxItems) throw InvalidInput("too many items for 32-bit indices");
  for (std::size_t pos = 0; pos < symbols.size(); ++pos) {
    if (!alphabet.contains(symbols[pos])) {
      throw InvalidInput("item " + std::to_string(pos / length) +
                         " position " + std::to_string(pos % length) +
                         ": symbol " + std::to_string(symbols[pos]) +
                         " outside alphabet of size " +
                         std::to_string(alphabet.size()));
    }
  }
  size_ = n;
  symbols_ = std::move(symbols);
}

Dataset Dataset::from_rows(Alphabet alphabet, std::uint32_t length,
                           const std::vector<Sequence>& rows) {
  std::vector<Symbol> flat;
  flat.reserve(rows.size() * length);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != length) {
      throw InvalidInput("item " + std::to_string(i) + " has length " +
                         std::to_string(rows[i].size()) + ", expected " +
                         std::to_string(length));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return Dataset(alphabet, length, std::move(flat));
}

void Dataset::check_sequence(SequenceView q, std::string_view what) const {
  if (q.size() != length_) {
    throw InvalidInput(std::string(what) + " has length " +
                       std::to_string(q.size()) + ", expected " +
                       std::to_string(length_));
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!alphabet_.contains(q[j])) {
      throw InvalidInput(std::string(what) + " position " + std::to_string(j) +
                         ": symbol " + std::to_string(q[j]) +
                         " outside alphabet of size " +
                         std::to_string(alphabet_.size()));
    }
  }
}

LcpValue lcp(SequenceView s, SequenceView t) {
  if (s.size() != t.size()) {
    throw InvalidInput("lcp of sequences with lengths " +
                       std::to_string(s.size()) + " and " +
                       std::to_string(t.size()));
  }
  auto [it, _] = std::ranges::mismatch(s, t);
  return static_cast<LcpValue>(it - s.begin());
}

LcpValue lcp(SequenceView s, SequenceView t, const Alphabet& alphabet) {
  auto in_alphabet = [&](Symbol c) { return alphabet.contains(c); };
  if (!std::ranges::all_of(s, in_alphabet) ||
      !std::ranges::all_of(t, in_alphabet)) {
    throw InvalidInput("sequence symbol outside alphabet of size " +
                       std::to_string(alphabet.size()));
  }
  return lcp(s, t);
}

std::uint32_t ultrametric_distance(SequenceView s, SequenceView t) {
  return static_cast<std::uint32_t>(s.size()) - lcp(s, t);
}

std::uint32_t ultrametric_distance(SequenceView s, SequenceView t,
                                   const Alphabet& alphabet) {
  return static_cast<std::uint32_t>(s.size()) - lcp(s, t, alphabet);
}

}  // namespace lcpindex
