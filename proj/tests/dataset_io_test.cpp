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

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "lcpindex/dataset_io.hpp"
#include "lcpindex/errors.hpp"
#include "support/gen.hpp"

namespace lcpindex::io {
namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return {};
}

std::string to_binary(const Dataset& d) {
  std::ostringstream out(std::ios::binary);
  write_dataset(out, d);
  return out.str();
}

Dataset from_binary(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_dataset(in);
}

TEST(BinaryDataset, RoundTrip) {
  testing::Gen gen(1);
  for (std::uint32_t sigma : {2u, 300u, 65536u}) {
    const Dataset d = gen.dataset(50, 7, sigma);
    const Dataset back = from_binary(to_binary(d));
    EXPECT_EQ(back.alphabet().size(), sigma);
    EXPECT_EQ(back.length(), 7u);
    EXPECT_TRUE(std::ranges::equal(back.symbols(), d.symbols()));
  }
  const Dataset empty(Alphabet(3), 2);
  EXPECT_EQ(from_binary(to_binary(empty)).size(), 0u);
}

TEST(BinaryDataset, RejectsCorruption) {
  const Dataset d = Dataset::from_rows(Alphabet(4), 2, {{0, 1}, {3, 2}});
  const std::string bytes = to_binary(d);
  EXPECT_NE(error_of([&] { from_binary("XXXX" + bytes.substr(4)); }).find("magic"), std::string::npos);
  EXPECT_NE(error_of([&] { from_binary(bytes + "x"); }).find("trailing"), std::string::npos);
  for (std::size_t len = 0; len < bytes.size(); ++len) {
    EXPECT_FALSE(error_of([&] { from_binary(bytes.substr(0, len)); }).empty()) << len;
  }
  std::string bad = bytes;
  bad[bad.size() - 2] = 9;  // last symbol of record 1
  const std::string msg = error_of([&] { from_binary(bad); });
  EXPECT_NE(msg.find("record 1"), std::string::npos) << msg;
}

TEST(BinaryDataset, LooksBinaryDoesNotConsume) {
  std::istringstream bin(to_binary(Dataset(Alphabet(2), 1)));
  EXPECT_TRUE(looks_binary(bin));
  EXPECT_EQ(read_dataset(bin).size(), 0u);
  std::istringstream text("0 1\n");
  EXPECT_FALSE(looks_binary(text));
  EXPECT_EQ(read_integer_text(text).size(), 1u);
}

TEST(IntegerText, InfersShapeAndSkipsBlankLines) {
  std::istringstream in("0 1 2\n\n4 0 1\n");
  const Dataset d = read_integer_text(in);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.length(), 3u);
  EXPECT_EQ(d.alphabet().size(), 5u);
  std::istringstream in2("0 1\n");
  EXPECT_EQ(read_integer_text(in2, {.alphabet = 16}).alphabet().size(), 16u);
}

TEST(IntegerText, ErrorsNameTheLine) {
  std::istringstream ragged("0 1 2\n0 1\n");
  EXPECT_NE(error_of([&] { read_integer_text(ragged); }).find("line 2"), std::string::npos);
  std::istringstream junk("0 1\n0 x\n");
  EXPECT_NE(error_of([&] { read_integer_text(junk); }).find("line 2"), std::string::npos);
  std::istringstream big("0 70000\n");
  EXPECT_NE(error_of([&] { read_integer_text(big); }).find("line 1"), std::string::npos);
  std::istringstream wide("0 5\n");
  EXPECT_FALSE(error_of([&] { read_integer_text(wide, {.alphabet = 4}); }).empty());
  std::istringstream wrong_length("0 1\n");
  EXPECT_FALSE(error_of([&] { read_integer_text(wrong_length, {.length = 3}); }).empty());
}

TEST(IntegerText, EmptyInputUsesRequestedLength) {
  std::istringstream in("");
  const Dataset d = read_integer_text(in, {.length = 4});
  EXPECT_EQ(d.size(), 0u);
  EXPECT_EQ(d.length(), 4u);
}

TEST(TokenText, VocabularyInFirstOccurrenceOrder) {
  std::istringstream in("the cat sat\nthe dog sat\n");
  const TokenizedDataset t = read_token_text(in);
  EXPECT_EQ(t.vocabulary.size(), 4u);
  EXPECT_EQ(t.vocabulary.lookup("the"), 0);
  EXPECT_EQ(t.vocabulary.lookup("cat"), 1);
  EXPECT_EQ(t.vocabulary.lookup("dog"), 3);
  EXPECT_EQ(t.dataset.item(1)[1], 3);
  EXPECT_EQ(parse_tokens("the dog cat", t.vocabulary), (Sequence{0, 3, 1}));
  EXPECT_NE(error_of([&] { parse_tokens("the bird", t.vocabulary); }).find("bird"), std::string::npos);
}

TEST(TokenText, VocabularyRoundTrip) {
  Vocabulary v;
  v.intern("alpha");
  v.intern("beta");
  v.intern("alpha");
  std::stringstream s;
  v.write(s);
  const Vocabulary back = Vocabulary::read(s);
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back.lookup("beta"), 1);
}

TEST(TokenText, RaggedRowsNameTheLine) {
  std::istringstream in("a b\nc\n");
  EXPECT_NE(error_of([&] { read_token_text(in); }).find("line 2"), std::string::npos);
}

TEST(ParseSymbols, AcceptsWhitespaceAndRejectsJunk) {
  EXPECT_EQ(parse_symbols(" 1\t2  3 "), (Sequence{1, 2, 3}));
  EXPECT_NE(error_of([] { parse_symbols("1 -2"); }).find("-2"), std::string::npos);
}

}  // namespace
}  // namespace lcpindex::io
