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


#include "arner/wordpiece.h"

#include <gtest/gtest.h>

#include "arner/error.h"
#include "arner/utf8.h"
#include "test_util.h"
#include "toy_vocab.h"

namespace arner {
namespace {

using Pieces = std::vector<std::string>;

const Vocabulary& Toy() {
  static const Vocabulary v = testing::ToyVocab();
  return v;
}

const LabelInventory& Inv() {
  static const LabelInventory inv = BuildLabelInventory(testing::ClassPool(3));
  return inv;
}

TokenizerConfig Small(std::size_t max_len, OverflowPolicy overflow,
                      std::size_t stride = 1) {
  TokenizerConfig c;
  c.max_sequence_length = max_len;
  c.overflow = overflow;
  c.window_stride = stride;
  return c;
}

std::vector<Tag> LabelTags(const TokenizedSequence& seq) {
  std::vector<Tag> out;
  for (std::size_t id : seq.label_ids) out.push_back(Inv().TagOf(id));
  return out;
}

std::string RandomArabicWord(testing::Rng& rng) {
  const std::u32string letters = utf8::Decode(testing::kToyLetters);
  std::u32string w;
  const std::size_t n = 1 + testing::Below(rng, 9);
  for (std::size_t i = 0; i < n; ++i) w.push_back(letters[testing::Below(rng, letters.size())]);
  return utf8::Encode(w);
}

TEST(TokenizeWordTest, CairoSplitsIntoThreePieces) {
  const Vocabulary v = Vocabulary::FromTokens(
      {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "ال", "##قاهر", "##ة"});
  EXPECT_EQ(TokenizeWord(v, "القاهرة"), (Pieces{"ال", "##قاهر", "##ة"}));
}

TEST(TokenizeWordTest, WholeWordInVocabulary) {
  EXPECT_EQ(TokenizeWord(Toy(), "القدس"), Pieces{"القدس"});
  EXPECT_EQ(TokenizeWord(Toy(), "القاهرة"), (Pieces{"ال", "##قاهر", "##ة"}));
  EXPECT_EQ(TokenizeWord(Toy(), "في"), Pieces{"في"});
}

TEST(TokenizeWordTest, UnsegmentableWordIsOneUnknown) {
  const Vocabulary v = Vocabulary::FromTokens({"[PAD]", "[UNK]", "[CLS]", "[SEP]", "a", "##b"});
  EXPECT_EQ(TokenizeWord(v, "ab"), (Pieces{"a", "##b"}));
  EXPECT_EQ(TokenizeWord(v, "abc"), Pieces{"[UNK]"});
  EXPECT_EQ(TokenizeWord(v, "ba"), Pieces{"[UNK]"});
  EXPECT_EQ(TokenizeWord(Toy(), "مصرx"), Pieces{"[UNK]"});
}

TEST(TokenizeWordTest, OverlongWordIsOneUnknown) {
  EXPECT_EQ(TokenizeWord(Toy(), "بببب", 3), Pieces{"[UNK]"});
  EXPECT_EQ(TokenizeWord(Toy(), "ببب", 3), (Pieces{"ب", "##ب", "##ب"}));
}

TEST(TokenizeWordTest, GreedyPrefersTheLongestPrefix) {
  EXPECT_EQ(TokenizeWord(Toy(), "الكتاب"), (Pieces{"ال", "##كتاب"}));
  EXPECT_EQ(TokenizeWord(Toy(), "كتابات"), (Pieces{"كتاب", "##ات"}));
}

TEST(TokenizeWordTest, ConcatenationAndDeterminism) {
  testing::Rng rng(21);
  for (int iter = 0; iter < 3000; ++iter) {
    const std::string word = RandomArabicWord(rng);
    const Pieces pieces = TokenizeWord(Toy(), word);
    ASSERT_EQ(pieces, TokenizeWord(Toy(), word));
    if (pieces == Pieces{"[UNK]"}) continue;
    std::string joined;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      ASSERT_EQ(pieces[i].starts_with("##"), i > 0);
      joined += i == 0 ? pieces[i] : pieces[i].substr(2);
    }
    ASSERT_EQ(joined, word);
  }
}

TEST(EncodeSentenceTest, EmptySentence) {
  const auto seqs = EncodeSentence(Toy(), Small(6, OverflowPolicy::kTruncate), {});
  ASSERT_EQ(seqs.size(), 1u);
  const auto& s = seqs[0];
  EXPECT_EQ(s.tokens, (Pieces{"[CLS]", "[SEP]", "[PAD]", "[PAD]", "[PAD]", "[PAD]"}));
  EXPECT_EQ(s.mask, (std::vector<std::uint8_t>{1, 1, 0, 0, 0, 0}));
  for (const auto& w : s.word_index) EXPECT_FALSE(w.has_value());
}

TEST(EncodeSentenceTest, DefaultLengthIs256) {
  const std::vector<std::string> words{"القدس", "في", "مصر"};
  const auto seqs = EncodeSentence(Toy(), TokenizerConfig{}, words);
  ASSERT_EQ(seqs.size(), 1u);
  EXPECT_EQ(seqs[0].length(), 256u);
  EXPECT_EQ(seqs[0].ids[0], Toy().sequence_start_id());
  EXPECT_EQ(seqs[0].ids[4], Toy().sequence_end_id());
  EXPECT_EQ(seqs[0].ids[5], Toy().padding_id());
}

TEST(EncodeSentenceTest, TruncateKeepsOneFullSequence) {
  const std::vector<std::string> words(300, "في");
  const auto seqs = EncodeSentence(Toy(), Small(8, OverflowPolicy::kTruncate), words);
  ASSERT_EQ(seqs.size(), 1u);
  EXPECT_EQ(seqs[0].length(), 8u);
  EXPECT_EQ(seqs[0].tokens.front(), "[CLS]");
  EXPECT_EQ(seqs[0].tokens.back(), "[SEP]");
  EXPECT_EQ(*seqs[0].word_index[6], 5u);
}

TEST(EncodeSentenceTest, WindowsCoverEveryToken) {
  const std::vector<std::string> words(300, "في");
  const auto seqs = EncodeSentence(Toy(), Small(8, OverflowPolicy::kWindow, 4), words);
  ASSERT_GE(seqs.size(), 2u);
  std::vector<bool> covered(words.size(), false);
  for (const auto& s : seqs) {
    ASSERT_EQ(s.length(), 8u);
    std::optional<std::size_t> prev;
    for (const auto& w : s.word_index) {
      if (!w) continue;
      covered[*w] = true;
      if (prev) ASSERT_LE(*prev, *w);
      prev = w;
    }
  }
  EXPECT_TRUE(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
}

TEST(EncodeSentenceTest, WindowsAtDefaultScale) {
  std::vector<std::string> words(300, "مصر");
  const auto seqs = EncodeSentence(Toy(), Small(256, OverflowPolicy::kWindow, 128), words);
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(*seqs[1].word_index[1], 128u);
  EXPECT_EQ(*seqs[1].word_index[172], 299u);
}

TEST(EncodeSentenceTest, InvalidConfigIsAnError) {
  EXPECT_THROW(EncodeSentence(Toy(), Small(2, OverflowPolicy::kTruncate), {}), ConfigError);
  EXPECT_THROW(EncodeSentence(Toy(), Small(8, OverflowPolicy::kWindow, 0), {}), ConfigError);
  EXPECT_THROW(EncodeSentence(Toy(), Small(8, OverflowPolicy::kWindow, 7), {}), ConfigError);
  EXPECT_NO_THROW(EncodeSentence(Toy(), Small(8, OverflowPolicy::kWindow, 6), {}));
}

TEST(AlignLabelsTest, CairoUnderBothApproaches) {
  const Vocabulary v = Vocabulary::FromTokens(
      {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "ال", "##قاهر", "##ة"});
  const LabelInventory inv = BuildLabelInventory({EntityClass("Loc")});
  const std::vector<std::string> words{"القاهرة"};
  const std::vector<Tag> tags{Tag::Begin(EntityClass("Loc"))};
  const auto seq = EncodeSentence(v, Small(6, OverflowPolicy::kTruncate), words)[0];
  auto strings = [&](const TokenizedSequence& s) {
    Pieces out;
    for (std::size_t id : s.label_ids) out.push_back(inv.TagOf(id).ToString());
    return out;
  };
  EXPECT_EQ(strings(AlignLabels(seq, tags, AlignmentApproach::kAllSubtokens, inv)),
            (Pieces{"[PAD]", "B-Loc", "I-Loc", "I-Loc", "[PAD]", "[PAD]"}));
  EXPECT_EQ(strings(AlignLabels(seq, tags, AlignmentApproach::kFirstSubtokenOnly, inv)),
            (Pieces{"[PAD]", "B-Loc", "[PAD]", "[PAD]", "[PAD]", "[PAD]"}));
  EXPECT_EQ(strings(AlignLabels(seq, tags, AlignmentApproach::kAllSubtokens, inv, true)),
            (Pieces{"[PAD]", "B-Loc", "B-Loc", "B-Loc", "[PAD]", "[PAD]"}));
}

TEST(AlignLabelsTest, SinglePieceWordsAlignIdentically) {
  const std::vector<std::string> words{"في", "مصر"};
  const std::vector<Tag> tags{Tag::Outside(), Tag::Begin(EntityClass("Loc"))};
  const auto seq = EncodeSentence(Toy(), Small(6, OverflowPolicy::kTruncate), words)[0];
  EXPECT_EQ(AlignLabels(seq, tags, AlignmentApproach::kAllSubtokens, Inv()).label_ids,
            AlignLabels(seq, tags, AlignmentApproach::kFirstSubtokenOnly, Inv()).label_ids);
}

TEST(AlignLabelsTest, TagCountMismatchIsAnError) {
  const std::vector<std::string> words{"في", "مصر"};
  const auto seq = EncodeSentence(Toy(), Small(6, OverflowPolicy::kTruncate), words)[0];
  EXPECT_THROW(AlignLabels(seq, std::vector{Tag::Outside()},
                           AlignmentApproach::kAllSubtokens, Inv()),
               AlignmentError);
  EXPECT_THROW(AlignLabels(seq, std::vector{Tag::Outside(), Tag::Ignore()},
                           AlignmentApproach::kAllSubtokens, Inv()),
               AlignmentError);
}

TEST(ProjectToWordsTest, Fallbacks) {
  const std::vector<std::string> words{"القاهرة", "في"};
  const auto seq = EncodeSentence(Toy(), Small(6, OverflowPolicy::kTruncate), words)[0];
  std::vector<Tag> all_o(seq.length(), Tag::Outside());
  EXPECT_EQ(ProjectToWords(seq, all_o), (std::vector<Tag>(2, Tag::Outside())));
  std::vector<Tag> pred(seq.length(), Tag::Begin(EntityClass("Loc")));
  pred[1] = Tag::Ignore();
  EXPECT_EQ(ProjectToWords(seq, pred),
            (std::vector{Tag::Outside(), Tag::Begin(EntityClass("Loc"))}));
  EXPECT_THROW(ProjectToWords(seq, std::vector<Tag>(3, Tag::Outside())), AlignmentError);
}

TEST(ProjectToWordsTest, TruncatedWordsReadAsOutside) {
  const std::vector<std::string> words{"مصر", "مصر", "مصر", "مصر", "مصر"};
  const auto seq = EncodeSentence(Toy(), Small(5, OverflowPolicy::kTruncate), words)[0];
  const std::vector<Tag> pred(seq.length(), Tag::Begin(EntityClass("Loc")));
  const auto tags = ProjectToWords(seq, pred);
  ASSERT_EQ(tags.size(), 5u);
  EXPECT_EQ(tags[2], Tag::Begin(EntityClass("Loc")));
  EXPECT_EQ(tags[3], Tag::Outside());
}

TEST(ProjectToWordsTest, InvertsAlignmentUnderBothApproaches) {
  testing::Rng rng(17);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<std::string> words;
    const std::size_t n = testing::Below(rng, 10);
    for (std::size_t i = 0; i < n; ++i) words.push_back(RandomArabicWord(rng));
    const auto tags = RepairTagSequence(testing::RandomTags(rng, n, Inv().classes()));
    const auto seqs = EncodeSentence(Toy(), Small(128, OverflowPolicy::kTruncate), words);
    ASSERT_EQ(seqs.size(), 1u);
    for (auto approach : {AlignmentApproach::kAllSubtokens, AlignmentApproach::kFirstSubtokenOnly}) {
      const auto aligned = AlignLabels(seqs[0], tags, approach, Inv());
      ASSERT_EQ(ProjectToWords(aligned, LabelTags(aligned)), tags);
    }
  }
}

}  // namespace
}  // namespace arner
