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

#include "arner/transliteration.h"

#include <unicode/translit.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <istream>
#include <regex>
#include <semaphore>
#include <sstream>
#include <thread>

#include "arner/error.h"
#include "arner/text_normalizer.h"
#include "arner/utf8.h"
#include "httplib.h"
#include "json.hpp"

namespace arner {
namespace internal {
extern const char kDefaultArabiziRules[];
}  // namespace internal

namespace {

// Stands in for a word whose letters no rule covers.
constexpr std::string_view kUnmappableWord = "؟";

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsConsonantLetter(char c) {
  return c >= 'a' && c <= 'z' && !IsVowel(c);
}

bool MatchesAt(const std::u32string& word, std::size_t pos,
               const ArabiziRules::Rule& rule) {
  const std::string& key = rule.latin;
  if (pos + key.size() > word.size()) return false;
  if (rule.word_initial && pos != 0) return false;
  if (rule.word_final && pos + key.size() != word.size()) return false;
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (word[pos + k] != static_cast<unsigned char>(key[k])) return false;
  }
  return true;
}

void CheckArabizi(std::string_view word) {
  if (word.empty()) throw TransliterationError("cannot transliterate an empty word");
  if (ClassifyWord(word) != WordKind::kArabizi) {
    throw ContractError("not an Arabizi word: '" + utf8::Sanitize(word) + "'");
  }
}

}  // namespace

std::string_view ToString(TransliterationBackend backend) {
  return backend == TransliterationBackend::kExternal ? "external"
                                                      : "local-rules";
}

ArabiziRules ArabiziRules::Parse(std::istream& in) {
  ArabiziRules table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw LoadError("transliteration table line " + std::to_string(line_no) +
                      ": expected 'latin<TAB>arabic'");
    }
    Rule rule;
    std::string_view key(line.data(), tab);
    if (key.size() > 1 && key.front() == '^') {
      rule.word_initial = true;
      key.remove_prefix(1);
    }
    if (key.size() > 1 && key.back() == '$') {
      rule.word_final = true;
      key.remove_suffix(1);
    }
    rule.latin = std::string(key);
    rule.arabic = line.substr(tab + 1);
    table.rules_.push_back(std::move(rule));
  }
  return table;
}

ArabiziRules ArabiziRules::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open transliteration table " + path.string());
  return Parse(in);
}

const ArabiziRules& ArabiziRules::Default() {
  static const ArabiziRules rules = [] {
    std::istringstream in(internal::kDefaultArabiziRules);
    return Parse(in);
  }();
  return rules;
}

std::string ArabiziRules::Apply(std::string_view word) const {
  const std::u32string cps = utf8::Decode(word);
  std::u32string out;
  std::size_t i = 0;
  while (i < cps.size()) {
    const Rule* best = nullptr;
    auto specificity = [](const Rule& r) {
      return std::pair(r.latin.size(), int{r.word_initial} + int{r.word_final});
    };
    for (const Rule& rule : rules_) {
      if (!MatchesAt(cps, i, rule)) continue;
      if (best == nullptr || specificity(rule) > specificity(*best)) best = &rule;
    }
    if (best == nullptr) {
      // Arabic letters in mixed words pass through; anything else is dropped.
      if (IsArabicLetter(cps[i])) out.push_back(cps[i]);
      ++i;
      continue;
    }
    out += utf8::Decode(best->arabic);
    i += best->latin.size();
    if (best->latin.size() == 1 && !best->word_initial && !best->word_final &&
        IsConsonantLetter(best->latin[0])) {
      while (i < cps.size() && cps[i] == static_cast<char32_t>(best->latin[0])) {
        ++i;
      }
    }
  }
  return utf8::Encode(out);
}

std::string FoldToAscii(std::string_view word) {
  thread_local std::unique_ptr<icu::Transliterator> folder = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::Transliterator> t(icu::Transliterator::createInstance(
        "Latin-ASCII; Lower", UTRANS_FORWARD, status));
    return U_SUCCESS(status) ? std::move(t) : nullptr;
  }();
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
  if (folder) {
    folder->transliterate(text);
  } else {
    text.toLower();
  }
  std::string out;
  text.toUTF8String(out);
  return out;
}

std::vector<TransliterationResult> Transliterator::TransliterateAll(
    std::span<const std::string> words, Deadline deadline) const {
  std::vector<TransliterationResult> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Transliterate(w, deadline));
  return out;
}

TransliterationResult LocalTransliterator::Transliterate(std::string_view word,
                                                         Deadline) const {
  CheckArabizi(word);
  std::string arabic = rules_->Apply(FoldToAscii(word));
  if (arabic.empty()) arabic = kUnmappableWord;
  TransliterationResult result;
  result.source = std::string(word);
  result.candidates.push_back(std::move(arabic));
  result.backend = TransliterationBackend::kLocalRules;
  return result;
}

TransliterationResult TransliterateLocal(std::string_view word) {
  static const LocalTransliterator local;
  return local.Transliterate(word, NoDeadline());
}

std::vector<std::string> ParseInputToolsResponse(std::string_view body) {
  const auto json = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (!json.is_array() || json.size() < 2 || json[0] != "SUCCESS") return {};
  const auto& words = json[1];
  if (!words.is_array() || words.empty() || !words[0].is_array() ||
      words[0].size() < 2 || !words[0][1].is_array()) {
    return {};
  }
  std::vector<std::string> candidates;
  for (const auto& c : words[0][1]) {
    if (c.is_string() && !c.get_ref<const std::string&>().empty()) {
      candidates.push_back(c.get<std::string>());
    }
  }
  return candidates;
}

class ExternalTransliterator::Gate {
 public:
  explicit Gate(std::size_t slots)
      : sem_(static_cast<std::ptrdiff_t>(slots)) {}

  bool Acquire(Deadline deadline) {
    if (deadline == Deadline::max()) {
      sem_.acquire();
      return true;
    }
    return sem_.try_acquire_until(deadline);
  }
  void Release() { sem_.release(); }

 private:
  std::counting_semaphore<> sem_;
};

ExternalTransliterator::ExternalTransliterator(
    ExternalTransliterationConfig config,
    std::shared_ptr<const Transliterator> fallback)
    : config_(std::move(config)), fallback_(std::move(fallback)) {
  static const std::regex url(R"(^(https?://[^/?#]+)(/[^?#]*)?$)");
  std::smatch m;
  if (config_.endpoint.empty()) {
    throw ConfigError("transliteration endpoint is not configured");
  }
  if (!std::regex_match(config_.endpoint, m, url)) {
    throw ConfigError("cannot parse transliteration endpoint '" +
                      config_.endpoint + "'");
  }
  if (config_.max_in_flight == 0 || config_.max_candidates == 0) {
    throw ConfigError("max_in_flight and max_candidates must be positive");
  }
  if (!fallback_) throw ConfigError("a fallback transliterator is required");
  base_url_ = m[1].str();
  path_ = m[2].matched && m[2].length() > 0 ? m[2].str() : "/";
  gate_ = std::make_unique<Gate>(config_.max_in_flight);
}

ExternalTransliterator::~ExternalTransliterator() = default;

TransliterationResult ExternalTransliterator::Transliterate(
    std::string_view word, Deadline deadline) const {
  CheckArabizi(word);
  auto fall_back = [&](std::string reason) {
    TransliterationResult r = fallback_->Transliterate(word, NoDeadline());
    r.fallback_reason = std::move(reason);
    return r;
  };

  using Clock = std::chrono::steady_clock;
  if (Clock::now() >= deadline) return fall_back("deadline exceeded");
  if (!gate_->Acquire(deadline)) return fall_back("deadline exceeded");
  struct Release {
    Gate* gate;
    ~Release() { gate->Release(); }
  } release{gate_.get()};

  auto timeout = config_.timeout;
  if (deadline != Deadline::max()) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) return fall_back("deadline exceeded");
    timeout = std::min(timeout, left);
  }

  httplib::Result response{nullptr, httplib::Error::Unknown};
  try {
    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Params params{
        {"text", std::string(word)},
        {"itc", config_.input_tool},
        {"num", std::to_string(config_.max_candidates)},
        {"ie", "utf-8"},
        {"oe", "utf-8"},
    };
    response = client.Get(path_, params, httplib::Headers{});
  } catch (const std::exception& e) {
    return fall_back(std::string("transport error: ") + e.what());
  }
  if (!response) {
    return fall_back("transport error: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    return fall_back("HTTP " + std::to_string(response->status));
  }
  std::vector<std::string> candidates = ParseInputToolsResponse(response->body);
  // Multi-word candidates would change the word count downstream.
  std::erase_if(candidates, [](const std::string& c) {
    return c.find_first_of(" \t\r\n") != std::string::npos;
  });
  if (candidates.empty()) return fall_back("unexpected response payload");
  if (ContainsLatinLetter(candidates.front()) ||
      ClassifyWord(candidates.front()) != WordKind::kArabic) {
    return fall_back("service returned a non-Arabic candidate");
  }
  for (auto& c : candidates) c = utf8::Sanitize(c);
  if (candidates.size() > config_.max_candidates) {
    candidates.resize(config_.max_candidates);
  }

  TransliterationResult result;
  result.source = std::string(word);
  result.candidates = std::move(candidates);
  result.backend = TransliterationBackend::kExternal;
  return result;
}

std::vector<TransliterationResult> ExternalTransliterator::TransliterateAll(
    std::span<const std::string> words, Deadline deadline) const {
  std::vector<TransliterationResult> out(words.size());
  const std::size_t workers = std::min(config_.max_in_flight, words.size());
  if (workers <= 1) return Transliterator::TransliterateAll(words, deadline);

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(words.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < words.size(); i = next++) {
          try {
            out[i] = Transliterate(words[i], deadline);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace arner
