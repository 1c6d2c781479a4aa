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

// Greedy longest-prefix sub-word tokenization, fixed-length sequence
// preparation, and the two ways of spreading word labels over sub-words.

#ifndef ARNER_WORDPIECE_H_
#define ARNER_WORDPIECE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arner/tags.h"
#include "arner/vocabulary.h"

namespace arner {

enum class OverflowPolicy { kTruncate, kWindow };

struct TokenizerConfig {
  // Counts the sequence start/end specials.
  std::size_t max_sequence_length = 256;
  OverflowPolicy overflow = OverflowPolicy::kTruncate;
  // Content tokens between consecutive window starts.
  std::size_t window_stride = 128;
  // Longer words become a single unknown token.
  std::size_t max_chars_per_word = 100;

  std::size_t content_capacity() const { return max_sequence_length - 2; }
  // Throws ConfigError unless max_sequence_length >= 3 and, when windowing,
  // 0 < window_stride <= content_capacity().
  void Validate() const;
};

enum class AlignmentApproach {
  // Every sub-word carries the word's entity label.
  kAllSubtokens,
  // Only the first sub-word is labeled; the rest are Ignore.
  kFirstSubtokenOnly,
};

// One fixed-length model input. All per-position vectors have
// max_sequence_length entries.
struct TokenizedSequence {
  std::vector<std::string> tokens;
  std::vector<TokenId> ids;
  // Source word of each position; empty for specials and padding.
  std::vector<std::optional<std::size_t>> word_index;
  // Position of the sub-word within its word (0 = first piece).
  std::vector<std::size_t> piece_index;
  // 1 for real tokens (including specials), 0 for padding.
  std::vector<std::uint8_t> mask;
  // Filled by AlignLabels.
  std::vector<std::size_t> label_ids;
  // The complete source sentence, including words outside this window.
  std::vector<std::string> words;

  std::size_t length() const { return tokens.size(); }
  bool IsFirstPiece(std::size_t pos) const {
    return word_index[pos].has_value() && piece_index[pos] == 0;
  }
};

// Greedy longest-prefix-first segmentation. Pieces after the first carry the
// "##" prefix. A word that cannot be segmented, or is longer than
// max_chars_per_word code points, becomes a single unknown token.
std::vector<std::string> TokenizeWord(const Vocabulary& vocab,
                                      std::string_view word,
                                      std::size_t max_chars_per_word = 100);

// Adds start/end specials and pads every sequence to max_sequence_length.
// Truncation keeps one sequence and drops the tail; windowing emits
// overlapping sequences, one every window_stride content tokens, until all
// content tokens are covered.
std::vector<TokenizedSequence> EncodeSentence(
    const Vocabulary& vocab, const TokenizerConfig& config,
    std::span<const std::string> words);

// Spreads word tags over sub-words. With kAllSubtokens, continuation pieces
// of a Begin word get Inside of the same class, unless `repeat_begin` is set,
// which copies Begin literally onto every piece. Specials and padding always
// get Ignore. Throws AlignmentError if the tag count differs from the word
// count or a tag is Ignore.
TokenizedSequence AlignLabels(TokenizedSequence sequence,
                              std::span<const Tag> word_tags,
                              AlignmentApproach approach,
                              const LabelInventory& inventory,
                              bool repeat_begin = false);

// Word tag = prediction on the word's first sub-word; Ignore reads as O.
// Words with no first sub-word in the sequence are nullopt.
std::vector<std::optional<Tag>> FirstPieceTags(
    const TokenizedSequence& sequence, std::span<const Tag> predicted);

// FirstPieceTags with uncovered words read as O, then repaired. Throws
// AlignmentError if `predicted` is not one tag per position.
std::vector<Tag> ProjectToWords(const TokenizedSequence& sequence,
                                std::span<const Tag> predicted);

}  // namespace arner

#endif  // ARNER_WORDPIECE_H_
