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

#include "arner/wordpiece.h"

#include <algorithm>

#include "arner/error.h"
#include "arner/utf8.h"

namespace arner {
namespace {

struct Piece {
  std::string token;
  TokenId id;
  std::size_t word;
  std::size_t piece;
};

// Byte offset of every code point boundary in `word`, including the end.
std::vector<std::size_t> Boundaries(std::string_view word) {
  std::vector<std::size_t> bounds{0};
  std::size_t pos = 0;
  for (char32_t c : utf8::Decode(word)) {
    pos += utf8::Encode(c).size();
    bounds.push_back(pos);
  }
  return bounds;
}

TokenizedSequence MakeSequence(const Vocabulary& vocab,
                               const TokenizerConfig& config,
                               std::span<const Piece> content,
                               std::span<const std::string> words) {
  TokenizedSequence seq;
  const std::size_t n = config.max_sequence_length;
  seq.tokens.reserve(n);
  seq.ids.reserve(n);
  seq.word_index.reserve(n);
  seq.piece_index.reserve(n);
  seq.mask.reserve(n);
  auto push = [&](const std::string& token, TokenId id,
                  std::optional<std::size_t> word, std::size_t piece,
                  std::uint8_t mask) {
    seq.tokens.push_back(token);
    seq.ids.push_back(id);
    seq.word_index.push_back(word);
    seq.piece_index.push_back(piece);
    seq.mask.push_back(mask);
  };
  const SpecialTokens& sp = vocab.specials();
  push(sp.sequence_start, vocab.sequence_start_id(), std::nullopt, 0, 1);
  for (const Piece& p : content) push(p.token, p.id, p.word, p.piece, 1);
  push(sp.sequence_end, vocab.sequence_end_id(), std::nullopt, 0, 1);
  while (seq.tokens.size() < n) {
    push(sp.padding, vocab.padding_id(), std::nullopt, 0, 0);
  }
  seq.words.assign(words.begin(), words.end());
  return seq;
}

}  // namespace

void TokenizerConfig::Validate() const {
  if (max_sequence_length < 3) {
    throw ConfigError("max_sequence_length must be at least 3");
  }
  if (overflow == OverflowPolicy::kWindow &&
      (window_stride == 0 || window_stride > content_capacity())) {
    throw ConfigError("window_stride must be in [1, " +
                      std::to_string(content_capacity()) + "]");
  }
  if (max_chars_per_word == 0) {
    throw ConfigError("max_chars_per_word must be positive");
  }
}

std::vector<std::string> TokenizeWord(const Vocabulary& vocab,
                                      std::string_view word,
                                      std::size_t max_chars_per_word) {
  const std::string clean = utf8::Sanitize(word);
  const std::vector<std::size_t> bounds = Boundaries(clean);
  const std::size_t n_chars = bounds.size() - 1;
  const std::string& unk = vocab.specials().unknown;
  if (n_chars == 0 || n_chars > max_chars_per_word) return {unk};

  std::vector<std::string> pieces;
  std::string candidate;
  std::size_t start = 0;
  while (start < n_chars) {
    bool matched = false;
    for (std::size_t end = n_chars; end > start; --end) {
      candidate.clear();
      if (start > 0) candidate = kContinuationPrefix;
      candidate.append(clean, bounds[start], bounds[end] - bounds[start]);
      if (vocab.Contains(candidate)) {
        pieces.push_back(candidate);
        start = end;
        matched = true;
        break;
      }
    }
    if (!matched) return {unk};
  }
  return pieces;
}

std::vector<TokenizedSequence> EncodeSentence(
    const Vocabulary& vocab, const TokenizerConfig& config,
    std::span<const std::string> words) {
  config.Validate();
  std::vector<Piece> content;
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto pieces = TokenizeWord(vocab, words[w], config.max_chars_per_word);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      const TokenId id = vocab.IdOf(pieces[p]);
      content.push_back(Piece{std::move(pieces[p]), id, w, p});
    }
  }

  const std::size_t capacity = config.content_capacity();
  std::vector<TokenizedSequence> out;
  if (content.size() <= capacity ||
      config.overflow == OverflowPolicy::kTruncate) {
    const std::size_t keep = std::min(content.size(), capacity);
    out.push_back(MakeSequence(vocab, config,
                               std::span(content).first(keep), words));
    return out;
  }
  for (std::size_t start = 0;; start += config.window_stride) {
    const std::size_t end = std::min(start + capacity, content.size());
    out.push_back(MakeSequence(
        vocab, config, std::span(content).subspan(start, end - start), words));
    if (end == content.size()) break;
  }
  return out;
}

TokenizedSequence AlignLabels(TokenizedSequence sequence,
                              std::span<const Tag> word_tags,
                              AlignmentApproach approach,
                              const LabelInventory& inventory,
                              bool repeat_begin) {
  if (word_tags.size() != sequence.words.size()) {
    throw AlignmentError("got " + std::to_string(word_tags.size()) +
                         " tags for " + std::to_string(sequence.words.size()) +
                         " words");
  }
  for (const Tag& t : word_tags) {
    if (t.kind() == TagKind::kIgnore) {
      throw AlignmentError("word-level tags cannot be [PAD]");
    }
  }

  sequence.label_ids.assign(sequence.length(), inventory.ignore_id());
  for (std::size_t pos = 0; pos < sequence.length(); ++pos) {
    if (!sequence.word_index[pos]) continue;
    const Tag& tag = word_tags[*sequence.word_index[pos]];
    if (sequence.piece_index[pos] == 0) {
      sequence.label_ids[pos] = inventory.IdOf(tag);
    } else if (approach == AlignmentApproach::kAllSubtokens) {
      if (tag.kind() == TagKind::kBegin && !repeat_begin) {
        sequence.label_ids[pos] = inventory.IdOf(Tag::Inside(tag.entity_class()));
      } else {
        sequence.label_ids[pos] = inventory.IdOf(tag);
      }
    }
  }
  return sequence;
}

std::vector<std::optional<Tag>> FirstPieceTags(
    const TokenizedSequence& sequence, std::span<const Tag> predicted) {
  if (predicted.size() != sequence.length()) {
    throw AlignmentError("got " + std::to_string(predicted.size()) +
                         " predictions for " +
                         std::to_string(sequence.length()) + " positions");
  }
  std::vector<std::optional<Tag>> out(sequence.words.size());
  for (std::size_t pos = 0; pos < sequence.length(); ++pos) {
    if (!sequence.IsFirstPiece(pos)) continue;
    const Tag& tag = predicted[pos];
    out[*sequence.word_index[pos]] =
        tag.kind() == TagKind::kIgnore ? Tag::Outside() : tag;
  }
  return out;
}

std::vector<Tag> ProjectToWords(const TokenizedSequence& sequence,
                                std::span<const Tag> predicted) {
  std::vector<Tag> tags;
  tags.reserve(sequence.words.size());
  for (auto& t : FirstPieceTags(sequence, predicted)) {
    tags.push_back(t ? std::move(*t) : Tag::Outside());
  }
  return RepairTagSequence(tags);
}

}  // namespace arner
