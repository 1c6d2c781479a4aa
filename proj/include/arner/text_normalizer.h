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

#ifndef ARNER_TEXT_NORMALIZER_H_
#define ARNER_TEXT_NORMALIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace arner {

// Text after whitespace normalization and symbol removal. offset_map[i] is
// the code point index in the raw input that output code point i came from.
struct CleanedText {
  std::string text;
  std::vector<std::size_t> offset_map;
};

// Collapses every run of whitespace (newlines included) to one space, drops
// emoji, symbol, control and format code points, and trims both ends.
CleanedText CleanText(std::string_view raw);

enum class WordKind { kArabic, kArabizi, kNeutral };

std::string_view ToString(WordKind kind);

// Arabizi if the word has any Latin letter; otherwise Arabic if it has an
// Arabic-script letter; otherwise Neutral (digits, punctuation).
WordKind ClassifyWord(std::string_view word);

bool IsArabicLetter(char32_t c);
bool IsLatinLetter(char32_t c);
bool ContainsLatinLetter(std::string_view text);

// Removes Arabic harakat, Quranic annotation marks and tatweel.
std::string StripDiacritics(std::string_view text);

// Splits on single spaces as produced by CleanText.
std::vector<std::string> SplitWords(std::string_view cleaned);

}  // namespace arner

#endif  // ARNER_TEXT_NORMALIZER_H_
