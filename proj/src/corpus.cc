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

#include "arner/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "arner/error.h"

namespace arner {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool ParsesAsTag(std::string_view text) {
  try {
    Tag::Parse(text);
    return true;
  } catch (const InventoryError&) {
    return false;
  }
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Uniform integer in [0, bound) by rejection, so results do not depend on
// the standard library's distribution implementation.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void CheckFraction(const Fraction& f, const char* name) {
  if (f.den <= 0 || f.num < 0) {
    throw SplitError(std::string(name) + " fraction must be non-negative " +
                     "with a positive denominator");
  }
}

std::size_t FloorOf(const Fraction& f, std::size_t n) {
  return static_cast<std::size_t>(static_cast<__int128>(f.num) * n / f.den);
}

}  // namespace

std::size_t Corpus::TokenCount() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.words.size();
  return n;
}

LabelInventory Corpus::DeriveInventory() const {
  std::set<std::string> names;
  for (const auto& s : sentences) {
    for (const auto& t : s.tags) {
      if (t.has_class()) names.insert(t.entity_class().name());
    }
  }
  std::vector<EntityClass> classes;
  classes.reserve(names.size());
  for (const auto& n : names) classes.emplace_back(n);
  return LabelInventory(std::move(classes));
}

Corpus ReadConll(std::istream& in, std::string source_name) {
  Corpus corpus;
  corpus.source_name = std::move(source_name);
  std::vector<std::string> words;
  std::vector<Tag> tags;

  auto flush = [&] {
    if (words.empty()) return;
    auto repaired = RepairTagSequence(tags);
    corpus.sentences.push_back(
        MakeSentence(std::move(words), std::move(repaired)));
    words.clear();
    tags.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      flush();
      continue;
    }
    const auto fields = SplitFields(line);
    // "#" starts a comment unless the line still reads as "token tag", so
    // hashtag tokens survive a write/read roundtrip.
    if (fields.front().front() == '#' &&
        (fields.size() < 2 || !ParsesAsTag(fields.back()))) {
      continue;
    }
    if (fields.front() == "-DOCSTART-") {
      flush();
      continue;
    }
    if (fields.size() < 2) {
      throw ParseError(line_no, "expected 'token tag', got " +
                                    std::to_string(fields.size()) + " field(s)");
    }
    Tag tag = Tag::Outside();
    try {
      tag = Tag::Parse(fields.back());
    } catch (const InventoryError& e) {
      throw ParseError(line_no, e.what());
    }
    if (tag.kind() == TagKind::kIgnore) {
      throw ParseError(line_no, "[PAD] is not a word-level tag");
    }
    words.emplace_back(fields.front());
    tags.push_back(std::move(tag));
  }
  flush();
  return corpus;
}

Corpus ReadConllFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open corpus file " + path.string());
  return ReadConll(in, path.filename().string());
}

void WriteConll(const Corpus& corpus, std::ostream& out) {
  for (const auto& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      out << s.words[i] << ' ' << s.tags[i].ToString() << '\n';
    }
    out << '\n';
  }
}

std::string WriteConll(const Corpus& corpus) {
  std::ostringstream out;
  WriteConll(corpus, out);
  return out.str();
}

SplitSpec SplitSpec::Percent(int train, int eval, int test,
                             std::uint64_t seed) {
  return SplitSpec{{train, 100}, {eval, 100}, {test, 100}, seed};
}

CorpusSplit Split(const Corpus& corpus, const SplitSpec& spec) {
  CheckFraction(spec.train, "train");
  CheckFraction(spec.eval, "eval");
  CheckFraction(spec.test, "test");
  const __int128 a = spec.train.num, b = spec.eval.num, c = spec.test.num;
  const __int128 da = spec.train.den, db = spec.eval.den, dc = spec.test.den;
  if (a * db * dc + b * da * dc + c * da * db != da * db * dc) {
    throw SplitError("split fractions must sum to exactly 1");
  }
  const std::size_t n = corpus.sentences.size();
  if (n == 0) throw SplitError("cannot split an empty corpus");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[UniformBelow(rng, i + 1)]);
  }

  const std::size_t n_eval = FloorOf(spec.eval, n);
  const std::size_t n_test = FloorOf(spec.test, n);
  const std::size_t n_train = n - n_eval - n_test;

  CorpusSplit out;
  out.train.source_name = corpus.source_name + ":train";
  out.eval.source_name = corpus.source_name + ":eval";
  out.test.source_name = corpus.source_name + ":test";
  for (std::size_t i = 0; i < n; ++i) {
    Corpus& dst = i < n_train ? out.train
                  : i < n_train + n_eval ? out.eval
                                         : out.test;
    dst.sentences.push_back(corpus.sentences[order[i]]);
  }
  return out;
}

std::map<std::string, std::size_t> ClassHistogram(const Corpus& corpus) {
  std::map<std::string, std::size_t> histogram;
  for (const auto& s : corpus.sentences) {
    for (const auto& span : DecodeSpans(s)) {
      ++histogram[span.entity_class.name()];
    }
  }
  return histogram;
}

}  // namespace arner
