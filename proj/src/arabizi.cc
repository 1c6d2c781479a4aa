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

#include "arner/arabizi.h"

#include "arner/utf8.h"

namespace arner {

FrontResult ProcessPipelineFront(std::string_view raw,
                                 const Transliterator& transliterator,
                                 Deadline deadline) {
  const CleanedText cleaned = CleanText(raw);
  FrontResult out;

  std::vector<std::string> words = SplitWords(cleaned.text);
  std::vector<std::size_t> arabizi_index;
  std::vector<std::string> arabizi_words;
  out.provenance.reserve(words.size());

  std::size_t cleaned_pos = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t len = utf8::Length(words[i]);
    WordProvenance p;
    p.original = words[i];
    p.kind = ClassifyWord(words[i]);
    p.source = {cleaned.offset_map[cleaned_pos],
                cleaned.offset_map[cleaned_pos + len - 1] + 1};
    if (p.kind == WordKind::kArabizi) {
      arabizi_index.push_back(i);
      arabizi_words.push_back(words[i]);
    } else {
      p.output = words[i];
    }
    out.provenance.push_back(std::move(p));
    cleaned_pos += len + 1;
  }

  auto results = transliterator.TransliterateAll(arabizi_words, deadline);
  for (std::size_t k = 0; k < arabizi_index.size(); ++k) {
    WordProvenance& p = out.provenance[arabizi_index[k]];
    p.output = results[k].chosen();
    p.transliteration = std::move(results[k]);
  }

  std::size_t pos = 0;
  for (auto& p : out.provenance) {
    if (!out.arabic_text.empty()) {
      out.arabic_text += ' ';
      ++pos;
    }
    const std::size_t len = utf8::Length(p.output);
    p.normalized = {pos, pos + len};
    pos += len;
    out.arabic_text += p.output;
    out.words.push_back(p.output);
  }
  return out;
}

}  // namespace arner
