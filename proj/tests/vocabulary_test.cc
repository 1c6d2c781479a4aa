// Copyright 2026 The arner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "arner/vocabulary.h"

#include <gtest/gtest.h>

#include <sstream>

#include "arner/error.h"
#include "test_util.h"
#include "toy_vocab.h"

namespace arner {
namespace {

Vocabulary Load(const std::string& text) {
  std::istringstream in(text);
  return Vocabulary::Load(in);
}

TEST(VocabularyTest, IdsAreLineNumbers) {
  const Vocabulary v = Load("[PAD]\n[UNK]\n[CLS]\n[SEP]\nال\n");
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.padding_id(), 0);
  EXPECT_EQ(v.unknown_id(), 1);
  EXPECT_EQ(v.sequence_start_id(), 2);
  EXPECT_EQ(v.sequence_end_id(), 3);
  EXPECT_EQ(v.IdOf("ال"), 4);
  EXPECT_EQ(v.TokenOf(4), "ال");
  EXPECT_EQ(v.IdOf("missing"), v.unknown_id());
  EXPECT_FALSE(v.Find("missing").has_value());
}

TEST(VocabularyTest, CrlfLinesAreAccepted) {
  const Vocabulary v = Load("[PAD]\r\n[UNK]\r\n[CLS]\r\n[SEP]\r\n");
  EXPECT_TRUE(v.Contains("[SEP]"));
}

TEST(VocabularyTest, MissingSpecialIsAnError) {
  EXPECT_THROW(Load("[PAD]\n[CLS]\n[SEP]\nا\n"), VocabError);
  EXPECT_THROW(Load(""), VocabError);
}

TEST(VocabularyTest, DuplicateOrEmptyTokenIsAnError) {
  EXPECT_THROW(Load("[PAD]\n[UNK]\n[CLS]\n[SEP]\nا\nا\n"), VocabError);
  EXPECT_THROW(Load("[PAD]\n[UNK]\n\n[CLS]\n[SEP]\n"), VocabError);
}

TEST(VocabularyTest, CustomSpecials) {
  std::istringstream in("<unk>\n<pad>\n<s>\n</s>\n");
  const Vocabulary v = Vocabulary::Load(in, SpecialTokens{"<unk>", "<pad>", "<s>", "</s>"});
  EXPECT_EQ(v.unknown_id(), 0);
  EXPECT_EQ(v.sequence_end_id(), 3);
}

TEST(VocabularyTest, CountsUnusedEntries) {
  const Vocabulary toy = testing::ToyVocab();
  EXPECT_EQ(toy.size(), 200u);
  std::size_t unused = 0;
  for (const auto& t : testing::ToyVocabTokens()) unused += t.starts_with("[unused");
  EXPECT_GT(unused, 0u);
  EXPECT_EQ(toy.UnusedCount(), unused);
}

TEST(VocabularyTest, DemoVocabularyLoads) {
  const Vocabulary v = Vocabulary::LoadFile(testing::SourceDir() / "data/demo_vocab.txt");
  EXPECT_GT(v.size(), 100u);
  EXPECT_TRUE(v.Contains("##قاهر"));
  EXPECT_THROW(Vocabulary::LoadFile("/nonexistent/vocab.txt"), VocabError);
}

}  // namespace
}  // namespace arner
