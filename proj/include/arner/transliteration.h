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

// Arabizi -> Arabic transliteration: a table-driven local rule engine and a
// client for an input-tools style web endpoint that falls back to the local
// rules whenever the service cannot answer.

#ifndef ARNER_TRANSLITERATION_H_
#define ARNER_TRANSLITERATION_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arner {

enum class TransliterationBackend { kExternal, kLocalRules };

std::string_view ToString(TransliterationBackend backend);

struct TransliterationResult {
  std::string source;
  // Never empty; the first candidate is the chosen one.
  std::vector<std::string> candidates;
  TransliterationBackend backend = TransliterationBackend::kLocalRules;
  // Why the external service was not used, when it was asked first.
  std::string fallback_reason;

  const std::string& chosen() const { return candidates.front(); }
};

using Deadline = std::chrono::steady_clock::time_point;

inline Deadline NoDeadline() { return Deadline::max(); }

// Left-to-right longest-match rewrite table, see data/arabizi_rules.tsv.
class ArabiziRules {
 public:
  struct Rule {
    std::string latin;
    std::string arabic;
    bool word_initial = false;
    bool word_final = false;
  };

  // Lines of "latin<TAB>arabic"; '#' lines and blank lines are skipped.
  // Throws LoadError on malformed lines.
  static ArabiziRules Parse(std::istream& in);
  static ArabiziRules LoadFile(const std::filesystem::path& path);
  // The table compiled into the library.
  static const ArabiziRules& Default();

  const std::vector<Rule>& rules() const { return rules_; }

  // Rewrites a lowercase ASCII word. Characters no rule covers are dropped.
  std::string Apply(std::string_view word) const;

 private:
  std::vector<Rule> rules_;
};

// Folds a Latin-script word to lowercase ASCII (é -> e, ß -> ss).
std::string FoldToAscii(std::string_view word);

class Transliterator {
 public:
  virtual ~Transliterator() = default;

  // Throws ContractError unless `word` classifies as Arabizi.
  virtual TransliterationResult Transliterate(std::string_view word,
                                              Deadline deadline) const = 0;

  // Results in input order. The default runs words one after another.
  virtual std::vector<TransliterationResult> TransliterateAll(
      std::span<const std::string> words, Deadline deadline) const;

  virtual std::string_view name() const = 0;
};

class LocalTransliterator final : public Transliterator {
 public:
  LocalTransliterator() : rules_(&ArabiziRules::Default()) {}
  explicit LocalTransliterator(std::shared_ptr<const ArabiziRules> rules)
      : owned_(std::move(rules)), rules_(owned_.get()) {}

  TransliterationResult Transliterate(std::string_view word,
                                      Deadline deadline) const override;
  std::string_view name() const override { return "local-rules"; }

 private:
  std::shared_ptr<const ArabiziRules> owned_;
  const ArabiziRules* rules_;
};

// Local rules with no deadline. Throws TransliterationError on an empty word
// and ContractError on a non-Arabizi word.
TransliterationResult TransliterateLocal(std::string_view word);

struct ExternalTransliterationConfig {
  // e.g. https://inputtools.google.com/request
  std::string endpoint;
  std::string input_tool = "ar-t-i0-und";
  std::size_t max_candidates = 5;
  std::chrono::milliseconds timeout{2000};
  // Concurrent requests allowed across all callers of one client.
  std::size_t max_in_flight = 4;
};

// Issues GET <endpoint>?text=<word>&itc=<input_tool>&num=<max_candidates>
// per word and reads the candidate list from a response shaped like
// ["SUCCESS", [[word, [candidate, ...], ...]]]. Transport errors, unexpected
// payloads, candidates with Latin letters and passed deadlines all fall back
// to local rules, with the reason recorded in the result.
class ExternalTransliterator final : public Transliterator {
 public:
  // Throws ConfigError for an empty or unparsable endpoint.
  explicit ExternalTransliterator(
      ExternalTransliterationConfig config,
      std::shared_ptr<const Transliterator> fallback =
          std::make_shared<LocalTransliterator>());
  ~ExternalTransliterator() override;

  TransliterationResult Transliterate(std::string_view word,
                                      Deadline deadline) const override;
  std::vector<TransliterationResult> TransliterateAll(
      std::span<const std::string> words, Deadline deadline) const override;
  std::string_view name() const override { return "external"; }

  const ExternalTransliterationConfig& config() const { return config_; }

 private:
  class Gate;

  ExternalTransliterationConfig config_;
  std::string base_url_;
  std::string path_;
  std::shared_ptr<const Transliterator> fallback_;
  std::unique_ptr<Gate> gate_;
};

// Parses a response body; returns an empty list if it is not a success
// payload.
std::vector<std::string> ParseInputToolsResponse(std::string_view body);

}  // namespace arner

#endif  // ARNER_TRANSLITERATION_H_
