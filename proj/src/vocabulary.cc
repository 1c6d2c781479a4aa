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

#include "arner/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "arner/error.h"

namespace arner {

Vocabulary::Vocabulary(std::vector<std::string> tokens, SpecialTokens specials)
    : tokens_(std::move(tokens)), specials_(std::move(specials)) {
  ids_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) {
      throw VocabError("empty token at line " + std::to_string(i + 1));
    }
    if (!ids_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw VocabError("duplicate token '" + tokens_[i] + "' at line " +
                       std::to_string(i + 1));
    }
  }
  auto require = [&](const std::string& token) {
    auto id = Find(token);
    if (!id) throw VocabError("vocabulary lacks special token " + token);
    return *id;
  };
  unknown_id_ = require(specials_.unknown);
  padding_id_ = require(specials_.padding);
  start_id_ = require(specials_.sequence_start);
  end_id_ = require(specials_.sequence_end);
}

Vocabulary Vocabulary::Load(std::istream& in, SpecialTokens specials) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(std::move(line));
  }
  return Vocabulary(std::move(tokens), std::move(specials));
}

Vocabulary Vocabulary::LoadFile(const std::filesystem::path& path,
                                SpecialTokens specials) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabError("cannot open vocabulary file " + path.string());
  return Load(in, std::move(specials));
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens,
                                  SpecialTokens specials) {
  return Vocabulary(std::move(tokens), std::move(specials));
}

bool Vocabulary::Contains(std::string_view token) const {
  return ids_.find(token) != ids_.end();
}

std::optional<TokenId> Vocabulary::Find(std::string_view token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::IdOf(std::string_view token) const {
  return Find(token).value_or(unknown_id_);
}

const std::string& Vocabulary::TokenOf(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw VocabError("token id " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::size_t Vocabulary::UnusedCount() const {
  return static_cast<std::size_t>(
      std::count_if(tokens_.begin(), tokens_.end(), [](const std::string& t) {
        return t.size() > 8 && t.starts_with("[unused") && t.back() == ']';
      }));
}

}  // namespace arner
