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

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>

#include "arner/error.h"
#include "arner/text_normalizer.h"

namespace arner {
namespace {

constexpr std::array<char, 4> kWeightsMagic = {'A', 'R', 'N', 'W'};
constexpr std::uint32_t kWeightsVersion = 1;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) with 24 bits, exactly representable as float.
float UnitFloat(std::uint64_t h) {
  return static_cast<float>(h >> 40) * (1.0f / 16777216.0f);
}

std::uint32_t ReadU32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
         std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

void WriteU32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xFF),
                                 static_cast<char>((v >> 8) & 0xFF),
                                 static_cast<char>((v >> 16) & 0xFF),
                                 static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

void ReadFloats(std::istream& in, std::vector<float>& out) {
  for (float& f : out) f = std::bit_cast<float>(ReadU32(in));
}

void WriteFloats(std::ostream& out, std::span<const float> values) {
  for (float f : values) WriteU32(out, std::bit_cast<std::uint32_t>(f));
}

}  // namespace

std::vector<Tag> ScoresToTags(const ScoreMatrix& scores,
                              const LabelInventory& inventory) {
  if (scores.cols() != inventory.size()) {
    throw ContractError("score width " + std::to_string(scores.cols()) +
                        " does not match inventory size " +
                        std::to_string(inventory.size()));
  }
  const std::size_t decodable = inventory.decodable_size();
  std::vector<Tag> tags;
  tags.reserve(scores.rows());
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    const auto row = scores.row(r);
    std::size_t best = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw ContractError("non-finite score at row " + std::to_string(r));
      }
      if (c < decodable && row[c] > row[best]) best = c;
    }
    tags.push_back(inventory.TagOf(best));
  }
  return tags;
}

ScoreMatrix MockHashClassifier::Score(const TokenizedSequence& sequence) const {
  ScoreMatrix scores(sequence.length(), width_);
  for (std::size_t pos = 0; pos < sequence.length(); ++pos) {
    if (!sequence.mask[pos]) {
      scores.at(pos, 0) = 1.0f;
      continue;
    }
    const std::uint64_t base = SplitMix64(
        SplitMix64(seed_ ^ static_cast<std::uint64_t>(
                               static_cast<std::uint32_t>(sequence.ids[pos]))) ^
        pos);
    for (std::size_t label = 0; label < width_; ++label) {
      scores.at(pos, label) = UnitFloat(SplitMix64(base ^ label));
    }
  }
  return scores;
}

void Lexicon::Add(std::string_view surface, const EntityClass& cls) {
  std::vector<std::string> words = SplitWords(CleanText(surface).text);
  if (words.empty()) throw LoadError("lexicon surface is empty");
  max_words_ = std::max(max_words_, words.size());
  entries_.insert_or_assign(std::move(words), cls);
}

Lexicon Lexicon::Parse(std::istream& in) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw LoadError("lexicon line " + std::to_string(line_no) +
                      ": expected 'surface<TAB>ClassName'");
    }
    try {
      lexicon.Add(std::string_view(line).substr(0, tab),
                  EntityClass(line.substr(tab + 1)));
    } catch (const InventoryError& e) {
      throw LoadError("lexicon line " + std::to_string(line_no) + ": " +
                      e.what());
    } catch (const LoadError& e) {
      throw LoadError("lexicon line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return lexicon;
}

Lexicon Lexicon::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open lexicon " + path.string());
  return Parse(in);
}

GazetteerClassifier::GazetteerClassifier(const LabelInventory& inventory,
                                         Lexicon lexicon)
    : inventory_(inventory), lexicon_(std::move(lexicon)) {
  for (const auto& [words, cls] : lexicon_.entries()) {
    if (!inventory_.Contains(cls)) {
      throw LoadError("lexicon class '" + cls.name() +
                      "' is not in the label inventory");
    }
  }
}

std::vector<Tag> GazetteerClassifier::MatchWords(
    std::span<const std::string> words) const {
  std::vector<Tag> tags(words.size(), Tag::Outside());
  const auto& entries = lexicon_.entries();
  std::vector<std::string> key;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t matched = 0;
    const std::size_t longest = std::min(lexicon_.max_words(), words.size() - i);
    for (std::size_t len = longest; len > 0 && matched == 0; --len) {
      key.assign(words.begin() + i, words.begin() + i + len);
      auto it = entries.find(key);
      if (it == entries.end()) continue;
      tags[i] = Tag::Begin(it->second);
      for (std::size_t k = 1; k < len; ++k) tags[i + k] = Tag::Inside(it->second);
      matched = len;
    }
    i += matched > 0 ? matched : 1;
  }
  return tags;
}

ScoreMatrix GazetteerClassifier::Score(const TokenizedSequence& sequence) const {
  const std::vector<Tag> word_tags = MatchWords(sequence.words);
  ScoreMatrix scores(sequence.length(), inventory_.size());
  for (std::size_t pos = 0; pos < sequence.length(); ++pos) {
    std::size_t label = inventory_.outside_id();
    if (sequence.word_index[pos]) {
      const Tag& tag = word_tags[*sequence.word_index[pos]];
      if (tag.kind() == TagKind::kBegin && sequence.piece_index[pos] > 0) {
        label = inventory_.IdOf(Tag::Inside(tag.entity_class()));
      } else {
        label = inventory_.IdOf(tag);
      }
    }
    scores.at(pos, label) = 1.0f;
  }
  return scores;
}

LinearTokenClassifier::LinearTokenClassifier(std::size_t rows, std::size_t cols,
                                             std::vector<float> weights,
                                             std::vector<float> bias)
    : rows_(rows),
      cols_(cols),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (weights_.size() != rows_ * cols_ || bias_.size() != cols_) {
    throw LoadError("linear model weights do not match its " +
                    std::to_string(rows_) + "x" + std::to_string(cols_) +
                    " shape");
  }
  for (float f : weights_) {
    if (!std::isfinite(f)) throw LoadError("linear model has a non-finite weight");
  }
  for (float f : bias_) {
    if (!std::isfinite(f)) throw LoadError("linear model has a non-finite bias");
  }
}

ScoreMatrix LinearTokenClassifier::Score(const TokenizedSequence& sequence) const {
  ScoreMatrix scores(sequence.length(), cols_);
  for (std::size_t pos = 0; pos < sequence.length(); ++pos) {
    auto row = scores.row(pos);
    std::copy(bias_.begin(), bias_.end(), row.begin());
    const auto id = sequence.ids[pos];
    if (id < 0 || static_cast<std::size_t>(id) >= rows_) continue;
    const float* w = weights_.data() + static_cast<std::size_t>(id) * cols_;
    for (std::size_t c = 0; c < cols_; ++c) row[c] += w[c];
  }
  return scores;
}

std::vector<EntityClass> LoadClassList(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open class list " + path.string());
  std::vector<EntityClass> classes;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      classes.emplace_back(line);
    } catch (const InventoryError& e) {
      throw LoadError(path.string() + ": " + e.what());
    }
  }
  return classes;
}

ExternalModel LoadExternalModel(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw LoadError("model directory " + dir.string() + " does not exist");
  }
  std::vector<EntityClass> classes = LoadClassList(dir / "classes.txt");
  LabelInventory inventory = [&] {
    try {
      return LabelInventory(std::move(classes));
    } catch (const InventoryError& e) {
      throw LoadError(std::string("class manifest: ") + e.what());
    }
  }();

  const auto weights_path = dir / "weights.bin";
  std::ifstream in(weights_path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + weights_path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || magic != kWeightsMagic) {
    throw LoadError(weights_path.string() + " is not an arner weights file");
  }
  const std::uint32_t version = ReadU32(in);
  const std::uint32_t rows = ReadU32(in);
  const std::uint32_t cols = ReadU32(in);
  if (!in) throw LoadError(weights_path.string() + ": truncated header");
  if (version != kWeightsVersion) {
    throw LoadError(weights_path.string() + ": unsupported version " +
                    std::to_string(version));
  }
  if (cols != inventory.size()) {
    throw LoadError("model output width " + std::to_string(cols) +
                    " does not match inventory size " +
                    std::to_string(inventory.size()));
  }
  const auto expected = std::uintmax_t{16} +
                        (std::uintmax_t{rows} * cols + cols) * sizeof(float);
  if (std::filesystem::file_size(weights_path) != expected) {
    throw LoadError(weights_path.string() + ": expected " +
                    std::to_string(expected) + " bytes");
  }
  std::vector<float> weights(std::size_t{rows} * cols);
  std::vector<float> bias(cols);
  ReadFloats(in, weights);
  ReadFloats(in, bias);
  if (!in) throw LoadError(weights_path.string() + ": truncated data");
  auto classifier = std::make_shared<const LinearTokenClassifier>(
      rows, cols, std::move(weights), std::move(bias));
  return ExternalModel{std::move(inventory), std::move(classifier)};
}

void SaveExternalModel(const std::filesystem::path& dir,
                       std::span<const EntityClass> classes, std::size_t rows,
                       std::span<const float> weights,
                       std::span<const float> bias) {
  if (weights.size() != rows * bias.size()) {
    throw ContractError("weights must hold rows * bias.size() values");
  }
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "classes.txt", std::ios::binary);
    for (const auto& c : classes) out << c.name() << '\n';
  }
  std::ofstream out(dir / "weights.bin", std::ios::binary);
  out.write(kWeightsMagic.data(), 4);
  WriteU32(out, kWeightsVersion);
  WriteU32(out, static_cast<std::uint32_t>(rows));
  WriteU32(out, static_cast<std::uint32_t>(bias.size()));
  WriteFloats(out, weights);
  WriteFloats(out, bias);
  if (!out) throw Error("failed writing " + (dir / "weights.bin").string());
}

}  // namespace arner
