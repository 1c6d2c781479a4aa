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

#include "arner/text_normalizer.h"

#include <unicode/uchar.h>
#include <unicode/uscript.h>

#include "arner/utf8.h"

namespace arner {
namespace {

bool IsWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

bool IsDropped(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (u_hasBinaryProperty(cp, UCHAR_VARIATION_SELECTOR)) return true;
  // Combining enclosing keycap.
  if (c == 0x20E3) return true;
  switch (u_charType(cp)) {
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
    case U_CONTROL_CHAR:
    case U_FORMAT_CHAR:
    case U_SURROGATE:
    case U_PRIVATE_USE_CHAR:
    case U_UNASSIGNED:
      return true;
    default:
      return false;
  }
}

UScriptCode ScriptOf(char32_t c) {
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode script = uscript_getScript(static_cast<UChar32>(c), &status);
  return U_SUCCESS(status) ? script : USCRIPT_INVALID_CODE;
}

bool IsArabicMark(char32_t c) {
  return (c >= 0x0610 && c <= 0x061A) || (c >= 0x064B && c <= 0x065F) ||
         c == 0x0670 || (c >= 0x06D6 && c <= 0x06ED) || c == 0x0640;
}

}  // namespace

CleanedText CleanText(std::string_view raw) {
  CleanedText out;
  bool pending_space = false;
  std::size_t space_source = 0;
  std::size_t index = 0;
  for (char32_t c : utf8::Decode(raw)) {
    const std::size_t source = index++;
    if (IsWhitespace(c)) {
      if (!pending_space) space_source = source;
      pending_space = true;
      continue;
    }
    if (IsDropped(c)) continue;
    if (pending_space && !out.offset_map.empty()) {
      out.text += ' ';
      out.offset_map.push_back(space_source);
    }
    pending_space = false;
    out.text += utf8::Encode(c);
    out.offset_map.push_back(source);
  }
  return out;
}

std::string_view ToString(WordKind kind) {
  switch (kind) {
    case WordKind::kArabic:
      return "arabic";
    case WordKind::kArabizi:
      return "arabizi";
    case WordKind::kNeutral:
      return "neutral";
  }
  return "neutral";
}

bool IsArabicLetter(char32_t c) {
  return u_isalpha(static_cast<UChar32>(c)) && ScriptOf(c) == USCRIPT_ARABIC;
}

bool IsLatinLetter(char32_t c) {
  return u_isalpha(static_cast<UChar32>(c)) && ScriptOf(c) == USCRIPT_LATIN;
}

bool ContainsLatinLetter(std::string_view text) {
  for (char32_t c : utf8::Decode(text)) {
    if (IsLatinLetter(c)) return true;
  }
  return false;
}

WordKind ClassifyWord(std::string_view word) {
  bool arabic = false;
  for (char32_t c : utf8::Decode(word)) {
    if (IsLatinLetter(c)) return WordKind::kArabizi;
    if (IsArabicLetter(c)) arabic = true;
  }
  return arabic ? WordKind::kArabic : WordKind::kNeutral;
}

std::string StripDiacritics(std::string_view text) {
  std::u32string kept;
  for (char32_t c : utf8::Decode(text)) {
    if (!IsArabicMark(c)) kept.push_back(c);
  }
  return utf8::Encode(kept);
}

std::vector<std::string> SplitWords(std::string_view cleaned) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start < cleaned.size()) {
    std::size_t end = cleaned.find(' ', start);
    if (end == std::string_view::npos) end = cleaned.size();
    if (end > start) words.emplace_back(cleaned.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

}  // namespace arner
