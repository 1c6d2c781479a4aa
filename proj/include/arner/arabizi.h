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

#ifndef ARNER_ARABIZI_H_
#define ARNER_ARABIZI_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arner/tags.h"
#include "arner/text_normalizer.h"
#include "arner/transliteration.h"

namespace arner {

// Where one word of the Arabic text came from.
struct WordProvenance {
  std::string original;
  WordKind kind = WordKind::kNeutral;
  // The word as it appears in the Arabic text.
  std::string output;
  // Set for Arabizi words only.
  std::optional<TransliterationResult> transliteration;
  // Code point range of `original` in the raw input.
  CharRange source;
  // Code point range of `output` in the Arabic text.
  CharRange normalized;
};

struct FrontResult {
  // Words joined by single spaces; contains no Latin letters.
  std::string arabic_text;
  std::vector<std::string> words;
  std::vector<WordProvenance> provenance;
};

// Cleans `raw`, classifies each word, transliterates the Arabizi ones and
// joins everything back in the original order. Arabic and Neutral words are
// copied byte for byte.
FrontResult ProcessPipelineFront(std::string_view raw,
                                 const Transliterator& transliterator,
                                 Deadline deadline = NoDeadline());

}  // namespace arner

#endif  // ARNER_ARABIZI_H_
