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

// BIO tag algebra: entity classes, tags, the label inventory that maps tags
// to classifier output indices, and conversion between word-level tag
// sequences and entity spans.

#ifndef ARNER_TAGS_H_
#define ARNER_TAGS_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arner {

// Name of an entity class such as "Person" or "Population-Center". Non-empty,
// no whitespace, case-sensitive.
class EntityClass {
 public:
  // Throws InventoryError if `name` is empty or contains whitespace.
  explicit EntityClass(std::string name);

  const std::string& name() const { return name_; }

  friend auto operator<=>(const EntityClass&, const EntityClass&) = default;
  friend bool operator==(const EntityClass&, const EntityClass&) = default;

 private:
  std::string name_;
};

enum class TagKind { kBegin, kInside, kOutside, kIgnore };

// One position's label. Begin/Inside carry a class; Outside/Ignore do not.
// Ignore marks sub-word positions that take no part in decoding.
class Tag {
 public:
  static Tag Begin(EntityClass cls) { return Tag(TagKind::kBegin, std::move(cls)); }
  static Tag Inside(EntityClass cls) { return Tag(TagKind::kInside, std::move(cls)); }
  static Tag Outside() { return Tag(TagKind::kOutside, EntityClass("O")); }
  static Tag Ignore() { return Tag(TagKind::kIgnore, EntityClass("O")); }

  // Parses "B-<class>", "I-<class>", "O" or "[PAD]". Throws InventoryError on
  // anything else.
  static Tag Parse(std::string_view text);

  TagKind kind() const { return kind_; }
  bool has_class() const {
    return kind_ == TagKind::kBegin || kind_ == TagKind::kInside;
  }
  // Only meaningful when has_class().
  const EntityClass& entity_class() const { return class_; }

  std::string ToString() const;

  friend bool operator==(const Tag& a, const Tag& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.has_class() || a.class_ == b.class_;
  }

 private:
  Tag(TagKind kind, EntityClass cls) : kind_(kind), class_(std::move(cls)) {}

  TagKind kind_;
  EntityClass class_;
};

inline constexpr std::string_view kIgnoreTagText = "[PAD]";

// Dense Tag <-> index mapping: O = 0, then B-c, I-c for each class in order,
// Ignore last. C classes give 2C + 2 indices, of which 2C + 1 are decodable.
class LabelInventory {
 public:
  // Throws InventoryError on duplicate class names.
  explicit LabelInventory(std::vector<EntityClass> classes);

  const std::vector<EntityClass>& classes() const { return classes_; }

  std::size_t size() const { return 2 * classes_.size() + 2; }
  std::size_t decodable_size() const { return 2 * classes_.size() + 1; }
  std::size_t outside_id() const { return 0; }
  std::size_t ignore_id() const { return size() - 1; }

  bool Contains(const EntityClass& cls) const;
  // Position of `cls` in classes(). Throws InventoryError if absent.
  std::size_t ClassIndex(const EntityClass& cls) const;

  // Throws InventoryError for a class outside the inventory.
  std::size_t IdOf(const Tag& tag) const;
  // Throws InventoryError for id >= size().
  Tag TagOf(std::size_t id) const;

 private:
  std::vector<EntityClass> classes_;
  std::unordered_map<std::string, std::size_t> index_;
};

LabelInventory BuildLabelInventory(std::vector<EntityClass> classes);

// A decoded entity. Word indices are inclusive; character offsets are
// half-open code point offsets into the sentence text.
struct EntitySpan {
  EntityClass entity_class;
  std::size_t word_start = 0;
  std::size_t word_end = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string surface;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

using CharRange = std::pair<std::size_t, std::size_t>;

// Words with one word-level tag each and the code point range every word
// occupies in `text`. Ignore tags are not allowed here.
struct AnnotatedSentence {
  std::string text;
  std::vector<std::string> words;
  std::vector<Tag> tags;
  std::vector<CharRange> char_offsets;

  friend bool operator==(const AnnotatedSentence&,
                         const AnnotatedSentence&) = default;
};

// Builds a sentence whose text is the words joined by single spaces.
AnnotatedSentence MakeSentence(std::vector<std::string> words,
                               std::vector<Tag> tags);

// Code point ranges of `words` joined by single spaces.
std::vector<CharRange> JoinedOffsets(std::span<const std::string> words);

// Turns orphan Inside tags (no Begin/Inside of the same class before them)
// into Begin. Legal sequences pass through unchanged. Throws ContractError on
// Ignore.
std::vector<Tag> RepairTagSequence(std::span<const Tag> tags);

bool IsLegalBio(std::span<const Tag> tags);

// Maximal B-c (I-c)* runs become spans ordered by word_start. Orphan Inside
// tags are read as Begin. Throws ContractError on Ignore or size mismatch.
std::vector<EntitySpan> DecodeSpans(const AnnotatedSentence& sentence);

// Inverse of DecodeSpans over single-space-joined text. Throws EncodingError
// for overlapping or out-of-range spans.
AnnotatedSentence EncodeSpans(std::vector<std::string> words,
                              std::span<const EntitySpan> spans);

}  // namespace arner

#endif  // ARNER_TAGS_H_
