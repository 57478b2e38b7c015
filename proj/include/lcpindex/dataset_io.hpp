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

#ifndef LCPINDEX_DATASET_IO_HPP_
#define LCPINDEX_DATASET_IO_HPP_

// Dataset files.
//
// Binary: "LCPD", version u32, symbol width u32 (= 2), N u64, L u32,
// sigma u32, then N rows of L little-endian u16 symbols.
//
// Text: one sequence per line, whitespace separated. Either integer symbols,
// or arbitrary tokens mapped to integers through a vocabulary ordered by
// first occurrence.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lcpindex/core.hpp"

namespace lcpindex::io {

inline constexpr char kDatasetMagic[4] = {'L', 'C', 'P', 'D'};
inline constexpr std::uint32_t kDatasetVersion = 1;

void write_dataset(std::ostream& out, const Dataset& dataset);
// Throws InvalidInput naming the header field or record that failed.
Dataset read_dataset(std::istream& in);

// True if the stream starts with the binary dataset magic. Does not consume.
bool looks_binary(std::istream& in);

struct TextOptions {
  // Alphabet size; defaults to max(2, largest symbol + 1) or the vocabulary
  // size.
  std::optional<std::uint32_t> alphabet;
  // Length for a file with no sequences; defaults to 1.
  std::optional<std::uint32_t> length;
};

// Integer rows. Throws InvalidInput naming the 1-based line on a bad token
// or a length mismatch. Blank lines are skipped.
Dataset read_integer_text(std::istream& in, const TextOptions& options = {});

class Vocabulary {
 public:
  // Id of `token`, adding it if new.
  Symbol intern(std::string_view token);
  // Throws InvalidInput if `token` is unknown.
  Symbol lookup(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }

  // One token per line, in id order.
  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> ids_;
};

struct TokenizedDataset {
  Dataset dataset;
  Vocabulary vocabulary;
};

TokenizedDataset read_token_text(std::istream& in, const TextOptions& options = {});

// Parses one line of whitespace-separated integer symbols.
Sequence parse_symbols(std::string_view line);
// Parses one line of tokens through `vocab`.
Sequence parse_tokens(std::string_view line, const Vocabulary& vocab);

}  // namespace lcpindex::io

#endif  // LCPINDEX_DATASET_IO_HPP_
