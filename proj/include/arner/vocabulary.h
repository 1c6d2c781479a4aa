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

#ifndef ARNER_VOCABULARY_H_
#define ARNER_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace arner {

using TokenId = std::int32_t;

inline constexpr std::string_view kContinuationPrefix = "##";

struct SpecialTokens {
  std::string unknown = "[UNK]";
  std::string padding = "[PAD]";
  std::string sequence_start = "[CLS]";
  std::string sequence_end = "[SEP]";
};

// Token <-> id table. Ids are dense from zero in file order.
class Vocabulary {
 public:
  // One token per line, id = zero-based line number. Throws VocabError on
  // empty or duplicate tokens and on missing special tokens.
  static Vocabulary Load(std::istream& in, SpecialTokens specials = {});
  static Vocabulary LoadFile(const std::filesystem::path& path,
                             SpecialTokens specials = {});
  static Vocabulary FromTokens(std::vector<std::string> tokens,
                               SpecialTokens specials = {});

  std::size_t size() const { return tokens_.size(); }
  bool Contains(std::string_view token) const;
  std::optional<TokenId> Find(std::string_view token) const;
  // Unknown tokens map to unknown_id().
  TokenId IdOf(std::string_view token) const;
  const std::string& TokenOf(TokenId id) const;

  const SpecialTokens& specials() const { return specials_; }
  TokenId unknown_id() const { return unknown_id_; }
  TokenId padding_id() const { return padding_id_; }
  TokenId sequence_start_id() const { return start_id_; }
  TokenId sequence_end_id() const { return end_id_; }

  // Reserved placeholder entries of the form "[unusedN]".
  std::size_t UnusedCount() const;

 private:
  Vocabulary(std::vector<std::string> tokens, SpecialTokens specials);

  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
  SpecialTokens specials_;
  TokenId unknown_id_ = 0;
  TokenId padding_id_ = 0;
  TokenId start_id_ = 0;
  TokenId end_id_ = 0;
};

}  // namespace arner

#endif  // ARNER_VOCABULARY_H_
