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


#include "arner/classifier.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <unistd.h>

#include "arner/error.h"
#include "test_util.h"
#include "toy_vocab.h"

namespace arner {
namespace {

namespace fs = std::filesystem;

const LabelInventory& Inv4() {
  static const LabelInventory inv = BuildLabelInventory(testing::ClassPool(4));
  return inv;
}

TokenizedSequence Encode(const std::vector<std::string>& words, std::size_t max_len = 16) {
  TokenizerConfig c;
  c.max_sequence_length = max_len;
  static const Vocabulary vocab = testing::ToyVocab();
  return EncodeSentence(vocab, c, words)[0];
}

// Per row: first index whose score is >= every other decodable score.
std::vector<std::size_t> BruteForceArgmax(const ScoreMatrix& m, std::size_t decodable) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < decodable; ++c) {
      bool is_max = true;
      for (std::size_t k = 0; k < decodable; ++k) is_max = is_max && m.at(r, c) >= m.at(r, k);
      if (is_max) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arner_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ScoresToTagsTest, OneHotRow) {
  ScoreMatrix m(1, Inv4().size());
  m.at(0, Inv4().IdOf(Tag::Begin(EntityClass("Loc")))) = 1.0f;
  EXPECT_EQ(ScoresToTags(m, Inv4()), std::vector{Tag::Begin(EntityClass("Loc"))});
}

TEST(ScoresToTagsTest, TiesGoToTheLowestIndex) {
  ScoreMatrix m(2, Inv4().size());
  m.at(0, 0) = 5.0f;
  m.at(0, 7) = 5.0f;
  m.at(1, 3) = 2.0f;
  m.at(1, 5) = 2.0f;
  const auto tags = ScoresToTags(m, Inv4());
  EXPECT_EQ(tags[0], Tag::Outside());
  EXPECT_EQ(tags[1], Inv4().TagOf(3));
}

TEST(ScoresToTagsTest, IgnoreIsNeverEmitted) {
  ScoreMatrix m(1, Inv4().size(), -1.0f);
  m.at(0, Inv4().ignore_id()) = 100.0f;
  EXPECT_EQ(ScoresToTags(m, Inv4()), std::vector{Tag::Outside()});
}

TEST(ScoresToTagsTest, ContractViolations) {
  EXPECT_THROW(ScoresToTags(ScoreMatrix(1, 9), Inv4()), ContractError);
  ScoreMatrix nan(1, Inv4().size());
  nan.at(0, 2) = std::numeric_limits<float>::quiet_NaN();
  EXPECT_THROW(ScoresToTags(nan, Inv4()), ContractError);
  ScoreMatrix inf(1, Inv4().size());
  inf.at(0, 9) = std::numeric_limits<float>::infinity();
  EXPECT_THROW(ScoresToTags(inf, Inv4()), ContractError);
  EXPECT_TRUE(ScoresToTags(ScoreMatrix(0, Inv4().size()), Inv4()).empty());
}

TEST(ScoresToTagsTest, MatchesBruteForceScan) {
  testing::Rng rng(61);
  std::uniform_int_distribution<int> coarse(-3, 3);
  std::normal_distribution<float> fine(0.0f, 10.0f);
  for (int iter = 0; iter < 2000; ++iter) {
    const LabelInventory inv = BuildLabelInventory(testing::ClassPool(testing::Below(rng, 6)));
    ScoreMatrix m(4, inv.size());
    const bool ties = testing::Chance(rng, 0.5);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < inv.size(); ++c) {
        m.at(r, c) = ties ? static_cast<float>(coarse(rng)) : fine(rng);
      }
    }
    const auto tags = ScoresToTags(m, inv);
    const auto expected = BruteForceArgmax(m, inv.decodable_size());
    ASSERT_EQ(tags.size(), 4u);
    for (std::size_t r = 0; r < 4; ++r) ASSERT_EQ(inv.IdOf(tags[r]), expected[r]);
  }
}

TEST(MockHashClassifierTest, DeterministicAndFinite) {
  const MockHashClassifier mock(Inv4(), 3);
  const auto seq = Encode({"القاهرة", "في", "مصر"});
  const ScoreMatrix a = mock.Score(seq);
  const ScoreMatrix b = mock.Score(seq);
  ASSERT_EQ(a.rows(), seq.length());
  ASSERT_EQ(a.cols(), Inv4().size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      ASSERT_EQ(a.at(r, c), b.at(r, c));
      ASSERT_TRUE(std::isfinite(a.at(r, c)));
    }
  }
  const MockHashClassifier other(Inv4(), 4);
  bool differs = false;
  const ScoreMatrix c = other.Score(seq);
  for (std::size_t col = 0; col < c.cols(); ++col) differs = differs || c.at(1, col) != a.at(1, col);
  EXPECT_TRUE(differs);
}

TEST(MockHashClassifierTest, PaddingScoresOutside) {
  const MockHashClassifier mock(Inv4());
  const auto seq = Encode({"في"});
  const auto tags = ScoresToTags(mock.Score(seq), Inv4());
  for (std::size_t pos = 0; pos < seq.length(); ++pos) {
    if (!seq.mask[pos]) EXPECT_EQ(tags[pos], Tag::Outside());
  }
}

TEST(MockHashClassifierTest, CoversManyLabels) {
  const LabelInventory inv = BuildLabelInventory(testing::ClassPool(50));
  const MockHashClassifier mock(inv, 1);
  testing::Rng rng(62);
  std::set<std::size_t> labels;
  std::size_t tokens = 0;
  while (tokens < 1000) {
    const auto seq = Encode(testing::RandomWords(rng, 20), 64);
    const auto tags = ScoresToTags(mock.Score(seq), inv);
    for (std::size_t pos = 0; pos < seq.length(); ++pos) {
      if (!seq.word_index[pos]) continue;
      labels.insert(inv.IdOf(tags[pos]));
      ++tokens;
    }
  }
  EXPECT_GE(labels.size(), 10u);
}

TEST(LexiconTest, ParseAndErrors) {
  std::istringstream in("# c\n\nالقاهرة\tLoc\nنهر  النيل\tLoc\r\n");
  const Lexicon lex = Lexicon::Parse(in);
  EXPECT_EQ(lex.entries().size(), 2u);
  EXPECT_EQ(lex.max_words(), 2u);
  EXPECT_TRUE(lex.entries().contains({"نهر", "النيل"}));

  std::istringstream no_tab("القاهرة Loc\n");
  EXPECT_THROW(Lexicon::Parse(no_tab), LoadError);
  std::istringstream bad_class("القاهرة\tNew York\n");
  EXPECT_THROW(Lexicon::Parse(bad_class), LoadError);
  std::istringstream empty_surface(" \tLoc\n");
  EXPECT_THROW(Lexicon::Parse(empty_surface), LoadError);
  EXPECT_THROW(Lexicon::LoadFile("/nonexistent.tsv"), LoadError);
}

TEST(GazetteerClassifierTest, SingleEntryMatch) {
  Lexicon lex;
  lex.Add("القاهرة", EntityClass("Loc"));
  const GazetteerClassifier gaz(Inv4(), lex);
  const std::vector<std::string> words{"زار", "القاهرة"};
  const auto seq = Encode(words);
  const auto word_tags = ProjectToWords(seq, ScoresToTags(gaz.Score(seq), Inv4()));
  EXPECT_EQ(word_tags, (std::vector{Tag::Outside(), Tag::Begin(EntityClass("Loc"))}));
}

TEST(GazetteerClassifierTest, ContinuationPiecesGetInside) {
  Lexicon lex;
  lex.Add("الكتاب", EntityClass("Misc"));
  const GazetteerClassifier gaz(Inv4(), lex);
  const auto seq = Encode({"الكتاب"});
  const auto tags = ScoresToTags(gaz.Score(seq), Inv4());
  EXPECT_EQ(tags[1], Tag::Begin(EntityClass("Misc")));
  EXPECT_EQ(tags[2], Tag::Inside(EntityClass("Misc")));
  EXPECT_EQ(tags[0], Tag::Outside());
}

TEST(GazetteerClassifierTest, EmptyLexiconIsAllOutside) {
  const GazetteerClassifier gaz(Inv4(), Lexicon{});
  const auto seq = Encode({"القاهرة", "في"});
  for (const auto& t : ScoresToTags(gaz.Score(seq), Inv4())) EXPECT_EQ(t, Tag::Outside());
}

TEST(GazetteerClassifierTest, LongerMatchWins) {
  Lexicon lex;
  lex.Add("النيل", EntityClass("Loc"));
  lex.Add("نهر النيل", EntityClass("Misc"));
  const GazetteerClassifier gaz(Inv4(), lex);
  const std::vector<std::string> words{"نهر", "النيل", "و", "النيل"};
  EXPECT_EQ(gaz.MatchWords(words),
            (std::vector{Tag::Begin(EntityClass("Misc")), Tag::Inside(EntityClass("Misc")),
                         Tag::Outside(), Tag::Begin(EntityClass("Loc"))}));
}

TEST(GazetteerClassifierTest, UnknownClassIsALoadError) {
  Lexicon lex;
  lex.Add("x", EntityClass("Nope"));
  EXPECT_THROW(GazetteerClassifier(Inv4(), lex), LoadError);
}

TEST(LinearModelTest, SaveLoadAndScore) {
  const fs::path dir = TempDir("linear");
  const auto classes = testing::ClassPool(4);
  const std::size_t rows = 200, cols = 10;
  std::vector<float> weights(rows * cols, 0.0f);
  weights[8 * cols + 5] = 2.0f;  // token 8 ("القدس") -> B-Org
  std::vector<float> bias(cols, 0.0f);
  bias[0] = 1.0f;
  SaveExternalModel(dir, classes, rows, weights, bias);

  const ExternalModel model = LoadExternalModel(dir);
  EXPECT_EQ(model.inventory.size(), 10u);
  EXPECT_EQ(model.classifier->rows(), rows);
  const auto seq = Encode({"القدس", "في"});
  const auto tags = ScoresToTags(model.classifier->Score(seq), model.inventory);
  EXPECT_EQ(tags[1], Tag::Begin(EntityClass("Org")));
  EXPECT_EQ(tags[2], Tag::Outside());
  fs::remove_all(dir);
}

TEST(LinearModelTest, LoadErrors) {
  EXPECT_THROW(LoadExternalModel("/nonexistent/model"), LoadError);

  const fs::path dir = TempDir("linear_bad");
  const auto classes = testing::ClassPool(50);
  // Output width 10 against a 102-label manifest.
  SaveExternalModel(dir, testing::ClassPool(4), 3, std::vector<float>(30, 0.0f),
                    std::vector<float>(10, 0.0f));
  {
    std::ofstream out(dir / "classes.txt");
    for (const auto& c : classes) out << c.name() << '\n';
  }
  EXPECT_THROW(LoadExternalModel(dir), LoadError);

  SaveExternalModel(dir, testing::ClassPool(1), 2, std::vector<float>(8, 0.0f),
                    std::vector<float>(4, 0.0f));
  fs::resize_file(dir / "weights.bin", fs::file_size(dir / "weights.bin") - 4);
  EXPECT_THROW(LoadExternalModel(dir), LoadError);

  {
    std::ofstream out(dir / "weights.bin", std::ios::binary);
    out << "NOPE0000000000000000";
  }
  EXPECT_THROW(LoadExternalModel(dir), LoadError);
  fs::remove(dir / "classes.txt");
  EXPECT_THROW(LoadExternalModel(dir), LoadError);
  fs::remove_all(dir);
}

TEST(LinearModelTest, ShapeMismatchIsALoadError) {
  EXPECT_THROW(LinearTokenClassifier(2, 3, std::vector<float>(5), std::vector<float>(3)), LoadError);
  EXPECT_THROW(LinearTokenClassifier(1, 2, {0.0f, NAN}, {0.0f, 0.0f}), LoadError);
}

TEST(LoadClassListTest, ReadsNamesInOrder) {
  const auto classes = LoadClassList(testing::SourceDir() / "data/demo_classes.txt");
  ASSERT_EQ(classes.size(), 50u);
  EXPECT_EQ(LabelInventory(classes).size(), 102u);
  EXPECT_THROW(LoadClassList("/nonexistent/classes.txt"), LoadError);
}

}  // namespace
}  // namespace arner
