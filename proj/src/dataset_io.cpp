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

#include "lcpindex/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "lcpindex/errors.hpp"

namespace lcpindex::io {

namespace {

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes, const std::string& what) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), bytes);
  if (in.gcount() != bytes) throw InvalidInput("dataset file truncated in " + what);
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    const std::size_t end = std::min(line.find_first_of(" \t\r", pos), line.size());
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

Symbol parse_symbol(std::string_view token) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xFFFF) {
    throw InvalidInput("'" + std::string(token) + "' is not a symbol in [0, 65535]");
  }
  return static_cast<Symbol>(value);
}

template <typename ParseRow>
Dataset read_rows(std::istream& in, const TextOptions& options, ParseRow parse,
                  std::uint32_t min_alphabet) {
  std::vector<Symbol> symbols;
  std::optional<std::uint32_t> length;
  std::uint32_t max_symbol = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_ws(line).empty()) continue;
    Sequence row;
    try {
      row = parse(line);
    } catch (const InvalidInput& e) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!length) length = static_cast<std::uint32_t>(row.size());
    if (row.size() != *length) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " +
                         std::to_string(row.size()) + " symbols, expected " +
                         std::to_string(*length));
    }
    for (Symbol s : row) max_symbol = std::max<std::uint32_t>(max_symbol, s);
    symbols.insert(symbols.end(), row.begin(), row.end());
  }
  const std::uint32_t len = length.value_or(options.length.value_or(1));
  if (options.length && length && *options.length != *length) {
    throw InvalidInput("rows have length " + std::to_string(*length) +
                       ", but length " + std::to_string(*options.length) +
                       " was requested");
  }
  const std::uint32_t sigma = options.alphabet.value_or(
      std::max({Alphabet::kMinSize, max_symbol + 1, min_alphabet}));
  return Dataset(Alphabet(sigma), len, std::move(symbols));
}

}  // namespace

void write_dataset(std::ostream& out, const Dataset& dataset) {
  std::string buf(kDatasetMagic, sizeof(kDatasetMagic));
  put_le(buf, kDatasetVersion, 4);
  put_le(buf, sizeof(Symbol), 4);
  put_le(buf, dataset.size(), 8);
  put_le(buf, dataset.length(), 4);
  put_le(buf, dataset.alphabet().size(), 4);
  buf.reserve(buf.size() + dataset.symbols().size() * 2);
  for (Symbol s : dataset.symbols()) put_le(buf, s, 2);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

bool looks_binary(std::istream& in) {
  std::array<char, 4> magic{};
  const auto start = in.tellg();
  in.read(magic.data(), 4);
  const bool ok = in.gcount() == 4 && std::equal(magic.begin(), magic.end(), kDatasetMagic);
  in.clear();
  in.seekg(start);
  return ok;
}

Dataset read_dataset(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (in.gcount() != 4 || !std::equal(magic.begin(), magic.end(), kDatasetMagic)) {
    throw InvalidInput("dataset file header: bad magic");
  }
  if (const auto v = get_le(in, 4, "header version"); v != kDatasetVersion) {
    throw InvalidInput("dataset file header: unsupported version " + std::to_string(v));
  }
  if (get_le(in, 4, "header symbol width") != sizeof(Symbol)) {
    throw InvalidInput("dataset file header: unsupported symbol width");
  }
  const std::uint64_t n = get_le(in, 8, "header N");
  const auto length = static_cast<std::uint32_t>(get_le(in, 4, "header L"));
  const auto sigma = static_cast<std::uint32_t>(get_le(in, 4, "header sigma"));
  if (n > Dataset::kMaxItems) throw InvalidInput("dataset file header: N too large");
  if (length == 0) throw InvalidInput("dataset file header: L must be positive");
  const Alphabet alphabet(sigma);
  std::vector<Symbol> symbols;
  symbols.reserve(std::min<std::uint64_t>(n * length, std::uint64_t{1} << 26));
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string what = "record " + std::to_string(i);
    for (std::uint32_t j = 0; j < length; ++j) {
      const auto s = get_le(in, 2, what);
      if (s >= sigma) {
        throw InvalidInput("dataset file " + what + " position " + std::to_string(j) +
                           ": symbol " + std::to_string(s) + " outside alphabet of size " +
                           std::to_string(sigma));
      }
      symbols.push_back(static_cast<Symbol>(s));
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InvalidInput("dataset file: trailing bytes after record " + std::to_string(n));
  }
  return Dataset(alphabet, length, std::move(symbols));
}

Sequence parse_symbols(std::string_view line) {
  Sequence out;
  for (std::string_view token : split_ws(line)) out.push_back(parse_symbol(token));
  return out;
}

Dataset read_integer_text(std::istream& in, const TextOptions& options) {
  return read_rows(in, options, parse_symbols, Alphabet::kMinSize);
}

Symbol Vocabulary::intern(std::string_view token) {
  std::string key(token);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  if (tokens_.size() >= Alphabet::kMaxSize) {
    throw InvalidInput("vocabulary exceeds 65536 distinct tokens");
  }
  const auto id = static_cast<Symbol>(tokens_.size());
  tokens_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

Symbol Vocabulary::lookup(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) {
    throw InvalidInput("token '" + std::string(token) + "' not in vocabulary");
  }
  return it->second;
}

void Vocabulary::write(std::ostream& out) const {
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::read(std::istream& in) {
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.size() != 1) {
      throw InvalidInput("vocabulary line " + std::to_string(line_no) +
                         ": expected exactly one token");
    }
    if (v.ids_.count(std::string(tokens[0])) != 0) {
      throw InvalidInput("vocabulary line " + std::to_string(line_no) +
                         ": duplicate token '" + std::string(tokens[0]) + "'");
    }
    v.intern(tokens[0]);
  }
  return v;
}

Sequence parse_tokens(std::string_view line, const Vocabulary& vocab) {
  Sequence out;
  for (std::string_view token : split_ws(line)) out.push_back(vocab.lookup(token));
  return out;
}

TokenizedDataset read_token_text(std::istream& in, const TextOptions& options) {
  Vocabulary vocab;
  auto parse = [&vocab](std::string_view line) {
    Sequence row;
    for (std::string_view token : split_ws(line)) row.push_back(vocab.intern(token));
    return row;
  };
  Dataset d = read_rows(in, options, parse, Alphabet::kMinSize);
  if (d.alphabet().size() < vocab.size()) {
    throw InvalidInput("alphabet " + std::to_string(d.alphabet().size()) +
                       " smaller than vocabulary of " + std::to_string(vocab.size()));
  }
  return TokenizedDataset{std::move(d), std::move(vocab)};
}

}  // namespace lcpindex::io
