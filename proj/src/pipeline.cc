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

#include "arner/pipeline.h"

#include <algorithm>
#include <chrono>

#include "arner/error.h"
#include "arner/utf8.h"

namespace arner {
namespace {

nlohmann::json RangeJson(const CharRange& r) {
  return nlohmann::json::array({r.first, r.second});
}

// Last position of the sequence holding a content token, or 0 if none.
std::size_t LastContent(const TokenizedSequence& seq) {
  std::size_t last = 0;
  for (std::size_t pos = 0; pos < seq.length(); ++pos) {
    if (seq.word_index[pos]) last = pos;
  }
  return last;
}

}  // namespace

nlohmann::json ToJson(const NerResult& result, bool with_timing) {
  using nlohmann::json;
  json spans = json::array();
  for (const auto& s : result.spans) {
    spans.push_back({{"class", s.entity_class.name()},
                     {"word_start", s.word_start},
                     {"word_end", s.word_end},
                     {"start", s.char_start},
                     {"end", s.char_end},
                     {"surface", s.surface}});
  }
  json provenance = json::array();
  for (const auto& p : result.provenance) {
    json entry = {{"original", p.original},
                  {"kind", ToString(p.kind)},
                  {"output", p.output},
                  {"source", RangeJson(p.source)},
                  {"normalized", RangeJson(p.normalized)}};
    if (p.transliteration) {
      entry["backend"] = ToString(p.transliteration->backend);
      entry["candidates"] = p.transliteration->candidates;
      if (!p.transliteration->fallback_reason.empty()) {
        entry["fallback_reason"] = p.transliteration->fallback_reason;
      }
    }
    provenance.push_back(std::move(entry));
  }
  json tags = json::array();
  for (const auto& t : result.word_tags) tags.push_back(t.ToString());
  json out = {{"input", result.input},
              {"normalized", result.normalized},
              {"words", result.words},
              {"tags", std::move(tags)},
              {"spans", std::move(spans)},
              {"provenance", std::move(provenance)},
              {"model", result.model_id}};
  if (with_timing) out["ms"] = result.elapsed_ms;
  return out;
}

NerPipeline::NerPipeline(Components components) : c_(std::move(components)) {
  if (!c_.vocabulary) throw LoadError("pipeline has no vocabulary");
  if (!c_.classifier) throw LoadError("pipeline has no classifier");
  if (!c_.transliterator) throw LoadError("pipeline has no transliterator");
  if (c_.classifier->output_width() != c_.inventory.size()) {
    throw LoadError("classifier output width " +
                    std::to_string(c_.classifier->output_width()) +
                    " does not match inventory size " +
                    std::to_string(c_.inventory.size()));
  }
  c_.tokenizer.Validate();
}

NerResult NerPipeline::Run(std::string_view raw, Deadline deadline) const {
  const auto started = std::chrono::steady_clock::now();
  NerResult result;
  result.input = utf8::Sanitize(raw);
  result.model_id = c_.model_id;

  FrontResult front = ProcessPipelineFront(raw, *c_.transliterator, deadline);

  AnnotatedSentence sentence;
  sentence.tags = TagWords(front.words);
  sentence.text = front.arabic_text;
  sentence.char_offsets = JoinedOffsets(front.words);
  sentence.words = front.words;
  result.spans = DecodeSpans(sentence);

  result.normalized = std::move(sentence.text);
  result.words = std::move(sentence.words);
  result.word_tags = std::move(sentence.tags);
  result.provenance = std::move(front.provenance);
  result.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return result;
}

std::vector<Tag> NerPipeline::TagWords(std::span<const std::string> words) const {
  // For words seen by several windows, keep the prediction from the window
  // where the word sits farthest from an edge.
  std::vector<std::optional<Tag>> merged(words.size());
  std::vector<std::ptrdiff_t> best_margin(words.size(), -1);
  for (const auto& seq : EncodeSentence(*c_.vocabulary, c_.tokenizer, words)) {
    const ScoreMatrix scores = c_.classifier->Score(seq);
    if (scores.rows() != seq.length()) {
      throw ContractError("classifier returned " + std::to_string(scores.rows()) +
                          " rows for " + std::to_string(seq.length()) +
                          " positions");
    }
    const std::vector<Tag> token_tags = ScoresToTags(scores, c_.inventory);
    std::vector<std::optional<Tag>> word_tags = FirstPieceTags(seq, token_tags);
    const std::size_t last = LastContent(seq);
    for (std::size_t pos = 0; pos < seq.length(); ++pos) {
      if (!seq.IsFirstPiece(pos)) continue;
      const std::size_t w = *seq.word_index[pos];
      const auto margin =
          static_cast<std::ptrdiff_t>(std::min(pos - 1, last - pos));
      if (margin > best_margin[w]) {
        best_margin[w] = margin;
        merged[w] = std::move(word_tags[w]);
      }
    }
  }
  std::vector<Tag> tags;
  tags.reserve(words.size());
  for (auto& t : merged) tags.push_back(t ? std::move(*t) : Tag::Outside());
  return RepairTagSequence(tags);
}

NerPipeline BuildPipeline(const PipelineConfig& config) {
  NerPipeline::Components c;
  c.model_id = config.model_id;
  c.tokenizer = config.tokenizer;
  c.approach = config.approach;
  c.vocabulary = std::make_shared<const Vocabulary>([&] {
    try {
      return Vocabulary::LoadFile(config.vocabulary_file);
    } catch (const VocabError& e) {
      throw LoadError(e.what());
    }
  }());

  auto inventory_from_classes = [&] {
    try {
      return LabelInventory(LoadClassList(config.classes_file));
    } catch (const InventoryError& e) {
      throw LoadError(std::string("class list: ") + e.what());
    }
  };

  switch (config.classifier) {
    case ClassifierKind::kMockHash:
      c.inventory = inventory_from_classes();
      c.classifier =
          std::make_shared<MockHashClassifier>(c.inventory, config.mock_seed);
      break;
    case ClassifierKind::kGazetteer:
      c.inventory = inventory_from_classes();
      c.classifier = std::make_shared<GazetteerClassifier>(
          c.inventory, Lexicon::LoadFile(config.classifier_path));
      break;
    case ClassifierKind::kExternalModel: {
      ExternalModel model = LoadExternalModel(config.classifier_path);
      if (model.classifier->rows() != c.vocabulary->size()) {
        throw LoadError("model has " + std::to_string(model.classifier->rows()) +
                        " token rows but the vocabulary has " +
                        std::to_string(c.vocabulary->size()) + " entries");
      }
      c.inventory = std::move(model.inventory);
      c.classifier = std::move(model.classifier);
      break;
    }
  }

  std::shared_ptr<const LocalTransliterator> local =
      config.transliteration_rules.empty()
          ? std::make_shared<const LocalTransliterator>()
          : std::make_shared<const LocalTransliterator>(
                std::make_shared<const ArabiziRules>(
                    ArabiziRules::LoadFile(config.transliteration_rules)));
  if (config.external_transliteration) {
    c.transliterator = std::make_shared<const ExternalTransliterator>(
        *config.external_transliteration, local);
  } else {
    c.transliterator = local;
  }
  return NerPipeline(std::move(c));
}

}  // namespace arner
