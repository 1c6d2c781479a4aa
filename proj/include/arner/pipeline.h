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

// Raw text -> entity spans:
//
//   clean -> classify words -> transliterate Arabizi -> sub-word encode
//   -> classify tokens -> argmax -> project to words -> repair -> spans
//
// A constructed NerPipeline is immutable; Run() may be called from many
// threads at once.

#ifndef ARNER_PIPELINE_H_
#define ARNER_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arner/arabizi.h"
#include "arner/classifier.h"
#include "arner/tags.h"
#include "arner/transliteration.h"
#include "arner/vocabulary.h"
#include "arner/wordpiece.h"
#include "json.hpp"

namespace arner {

struct NerResult {
  std::string input;  // Raw input with ill-formed UTF-8 replaced.
  // Arabic-only text; span offsets index into it.
  std::string normalized;
  std::vector<std::string> words;
  std::vector<Tag> word_tags;
  std::vector<EntitySpan> spans;
  std::vector<WordProvenance> provenance;
  std::string model_id;
  double elapsed_ms = 0.0;
};

// Everything but elapsed_ms unless `with_timing`.
nlohmann::json ToJson(const NerResult& result, bool with_timing = false);

class NerPipeline {
 public:
  struct Components {
    std::string model_id;
    LabelInventory inventory{{}};
    std::shared_ptr<const Vocabulary> vocabulary;
    TokenizerConfig tokenizer;
    AlignmentApproach approach = AlignmentApproach::kAllSubtokens;
    std::shared_ptr<const TokenClassifier> classifier;
    std::shared_ptr<const Transliterator> transliterator;
  };

  // Throws LoadError if a component is missing or the classifier width does
  // not match the inventory, ConfigError for an invalid tokenizer config.
  explicit NerPipeline(Components components);

  NerResult Run(std::string_view raw, Deadline deadline = NoDeadline()) const;

  // Tags already split Arabic words, skipping cleaning and transliteration.
  // Returns one legal BIO tag per word.
  std::vector<Tag> TagWords(std::span<const std::string> words) const;

  const std::string& model_id() const { return c_.model_id; }
  const LabelInventory& inventory() const { return c_.inventory; }
  const Components& components() const { return c_; }

 private:
  Components c_;
};

enum class ClassifierKind { kMockHash, kGazetteer, kExternalModel };

// Declarative pipeline description, resolved by BuildPipeline.
struct PipelineConfig {
  std::string model_id = "aner";
  // Class order file (one name per line). Ignored for external models, whose
  // manifest defines the inventory.
  std::filesystem::path classes_file;
  std::filesystem::path vocabulary_file;
  TokenizerConfig tokenizer;
  AlignmentApproach approach = AlignmentApproach::kAllSubtokens;
  ClassifierKind classifier = ClassifierKind::kMockHash;
  // Lexicon file for kGazetteer, model directory for kExternalModel.
  std::filesystem::path classifier_path;
  std::uint64_t mock_seed = 0;
  // Local rules only when unset.
  std::optional<ExternalTransliterationConfig> external_transliteration;
  // Replaces the built-in Arabizi table when set.
  std::filesystem::path transliteration_rules;
};

// Loads every file the config references. Throws LoadError (or ConfigError)
// so that failures surface at construction rather than per request.
NerPipeline BuildPipeline(const PipelineConfig& config);

}  // namespace arner

#endif  // ARNER_PIPELINE_H_
