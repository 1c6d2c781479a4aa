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

// Token classification backends. Every backend maps a TokenizedSequence to a
// (sequence length x inventory size) matrix of raw scores; decoding takes the
// per-row argmax over the decodable labels.

#ifndef ARNER_CLASSIFIER_H_
#define ARNER_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arner/tags.h"
#include "arner/wordpiece.h"

namespace arner {

// Row-major float matrix.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols, float fill = 0.0f)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  float& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  float at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<float> row(std::size_t r) {
    return std::span(data_).subspan(r * cols_, cols_);
  }
  std::span<const float> row(std::size_t r) const {
    return std::span(data_).subspan(r * cols_, cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

class TokenClassifier {
 public:
  virtual ~TokenClassifier() = default;

  // Deterministic for a fixed configuration. Returns sequence.length() rows
  // of output_width() finite scores.
  virtual ScoreMatrix Score(const TokenizedSequence& sequence) const = 0;

  virtual std::size_t output_width() const = 0;
  virtual std::string_view kind() const = 0;

  // True if Score() takes an internal lock, so concurrent callers queue.
  virtual bool serializes_access() const { return false; }
};

// Per row, the highest-scoring decodable label (Ignore excluded); ties go to
// the lowest index. Throws ContractError if the width differs from the
// inventory size or a score is not finite.
std::vector<Tag> ScoresToTags(const ScoreMatrix& scores,
                              const LabelInventory& inventory);

// Reproducible pseudo-random scores from a stable hash of (token id,
// position, label). Padding positions score O highest.
class MockHashClassifier final : public TokenClassifier {
 public:
  explicit MockHashClassifier(const LabelInventory& inventory,
                              std::uint64_t seed = 0)
      : width_(inventory.size()), seed_(seed) {}

  ScoreMatrix Score(const TokenizedSequence& sequence) const override;
  std::size_t output_width() const override { return width_; }
  std::string_view kind() const override { return "mock-hash"; }

 private:
  std::size_t width_;
  std::uint64_t seed_;
};

// Entity surfaces split into words, mapped to their class.
class Lexicon {
 public:
  // Throws LoadError on an empty surface or a class name that is not valid.
  void Add(std::string_view surface, const EntityClass& cls);

  // Lines of "surface<TAB>ClassName". Blank lines and '#' lines are skipped.
  static Lexicon Parse(std::istream& in);
  static Lexicon LoadFile(const std::filesystem::path& path);

  const std::map<std::vector<std::string>, EntityClass>& entries() const {
    return entries_;
  }
  std::size_t max_words() const { return max_words_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::vector<std::string>, EntityClass> entries_;
  std::size_t max_words_ = 0;
};

// Dictionary baseline: longest lexicon match wins at each word position and
// emits one-hot B-/I- scores over the matched words' sub-words.
class GazetteerClassifier final : public TokenClassifier {
 public:
  // Throws LoadError if a lexicon class is not in the inventory.
  GazetteerClassifier(const LabelInventory& inventory, Lexicon lexicon);

  ScoreMatrix Score(const TokenizedSequence& sequence) const override;
  std::size_t output_width() const override { return inventory_.size(); }
  std::string_view kind() const override { return "gazetteer"; }

  // Word-level tags from the longest-match scan.
  std::vector<Tag> MatchWords(std::span<const std::string> words) const;

 private:
  LabelInventory inventory_;
  Lexicon lexicon_;
};

// External model adapter ("arner-linear-v1"). A model directory holds:
//   classes.txt  class order, one name per line; the inventory is built from
//                it exactly as BuildLabelInventory does.
//   weights.bin  little-endian: "ARNW", uint32 version (1), uint32 rows,
//                uint32 cols, rows*cols float32 per-token-id scores, then
//                cols float32 bias.
// Scores are weights[token id] + bias; ids past the last row score the bias.
class LinearTokenClassifier final : public TokenClassifier {
 public:
  LinearTokenClassifier(std::size_t rows, std::size_t cols,
                        std::vector<float> weights, std::vector<float> bias);

  ScoreMatrix Score(const TokenizedSequence& sequence) const override;
  std::size_t output_width() const override { return cols_; }
  std::string_view kind() const override { return "linear"; }

  std::size_t rows() const { return rows_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<float> weights_;
  std::vector<float> bias_;
};

// Class names, one per line; blank lines are skipped. Throws LoadError.
std::vector<EntityClass> LoadClassList(const std::filesystem::path& path);

struct ExternalModel {
  LabelInventory inventory;
  std::shared_ptr<const LinearTokenClassifier> classifier;
};

// Throws LoadError for a missing directory or file, a bad header, a short
// file, or an output width that differs from the manifest's inventory size.
ExternalModel LoadExternalModel(const std::filesystem::path& dir);

// Writes a model directory LoadExternalModel accepts; the output width is
// bias.size() and weights holds rows * width values.
void SaveExternalModel(const std::filesystem::path& dir,
                       std::span<const EntityClass> classes, std::size_t rows,
                       std::span<const float> weights,
                       std::span<const float> bias);

}  // namespace arner

#endif  // ARNER_CLASSIFIER_H_
