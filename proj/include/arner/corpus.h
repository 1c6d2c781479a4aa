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

#ifndef ARNER_CORPUS_H_
#define ARNER_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "arner/tags.h"

namespace arner {

struct Corpus {
  std::vector<AnnotatedSentence> sentences;
  std::string source_name;

  std::size_t TokenCount() const;
  // Classes seen in the corpus, sorted by name.
  LabelInventory DeriveInventory() const;
};

// CoNLL reader. One "token ... tag" line per word, the tag being the last
// whitespace-separated field; blank lines end sentences; -DOCSTART- lines
// and '#' lines that do not read as "token tag" are skipped. Tags are
// repaired to legal BIO and sentence text is the words joined by single
// spaces.
// Throws ParseError (1-based line number) on malformed lines or tags.
Corpus ReadConll(std::istream& in, std::string source_name = {});
Corpus ReadConllFile(const std::filesystem::path& path);

// Writes "token tag" lines, one blank line after every sentence.
std::string WriteConll(const Corpus& corpus);
void WriteConll(const Corpus& corpus, std::ostream& out);

// Exact non-negative rational.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct SplitSpec {
  Fraction train{8, 10};
  Fraction eval{1, 10};
  Fraction test{1, 10};
  std::uint64_t seed = 0;

  static SplitSpec Percent(int train, int eval, int test, std::uint64_t seed);
};

struct CorpusSplit {
  Corpus train;
  Corpus eval;
  Corpus test;
};

// Seeded shuffle of whole sentences, then a contiguous cut into train, eval,
// test. eval and test get floor(fraction * N) sentences and train takes the
// rest. Throws SplitError if fractions are negative or do not sum to exactly
// one, or if the corpus is empty.
CorpusSplit Split(const Corpus& corpus, const SplitSpec& spec);

// Decoded span count per class name.
std::map<std::string, std::size_t> ClassHistogram(const Corpus& corpus);

}  // namespace arner

#endif  // ARNER_CORPUS_H_
