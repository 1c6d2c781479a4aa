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


// A 200-entry vocabulary over Arabic letters for tokenizer tests.

#ifndef ARNER_TESTS_TOY_VOCAB_H_
#define ARNER_TESTS_TOY_VOCAB_H_

#include <algorithm>
#include <string>
#include <vector>

#include "arner/utf8.h"
#include "arner/vocabulary.h"

namespace arner::testing {

inline constexpr char kToyLetters[] = "ابتثجحخدذرزسشصضطظعغفقكلمنهوية";

inline std::vector<std::string> ToyVocabTokens() {
  std::vector<std::string> tokens{"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
                                  "ال", "##قاهر", "##ة", "القدس", "في",
                                  "مصر", "##ات", "##ين", "كتاب", "##كتاب"};
  auto add = [&](std::string t) {
    if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) {
      tokens.push_back(std::move(t));
    }
  };
  for (char32_t c : utf8::Decode(kToyLetters)) {
    add(utf8::Encode(c));
    add("##" + utf8::Encode(c));
  }
  for (int i = 0; tokens.size() < 200; ++i) {
    tokens.push_back("[unused" + std::to_string(i) + "]");
  }
  return tokens;
}

inline Vocabulary ToyVocab() { return Vocabulary::FromTokens(ToyVocabTokens()); }

}  // namespace arner::testing

#endif  // ARNER_TESTS_TOY_VOCAB_H_
