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

#include "arner/tags.h"

#include <algorithm>

#include "arner/error.h"
#include "arner/utf8.h"

namespace arner {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Inside tag continuing a run of `prev`.
bool Continues(const Tag& prev, const Tag& tag) {
  return prev.has_class() && prev.entity_class() == tag.entity_class();
}

}  // namespace

EntityClass::EntityClass(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw InventoryError("entity class name is empty");
  if (std::any_of(name_.begin(), name_.end(), IsAsciiSpace)) {
    throw InventoryError("entity class name contains whitespace: '" + name_ +
                         "'");
  }
}

Tag Tag::Parse(std::string_view text) {
  if (text == "O") return Outside();
  if (text == kIgnoreTagText) return Ignore();
  if (text.size() > 2 && text[1] == '-') {
    EntityClass cls{std::string(text.substr(2))};
    if (text[0] == 'B') return Begin(std::move(cls));
    if (text[0] == 'I') return Inside(std::move(cls));
  }
  throw InventoryError("unknown tag '" + std::string(text) + "'");
}

std::string Tag::ToString() const {
  switch (kind_) {
    case TagKind::kBegin:
      return "B-" + class_.name();
    case TagKind::kInside:
      return "I-" + class_.name();
    case TagKind::kOutside:
      return "O";
    case TagKind::kIgnore:
      return std::string(kIgnoreTagText);
  }
  return "O";
}

LabelInventory::LabelInventory(std::vector<EntityClass> classes)
    : classes_(std::move(classes)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (!index_.emplace(classes_[i].name(), i).second) {
      throw InventoryError("duplicate entity class '" + classes_[i].name() +
                           "'");
    }
  }
}

bool LabelInventory::Contains(const EntityClass& cls) const {
  return index_.count(cls.name()) > 0;
}

std::size_t LabelInventory::ClassIndex(const EntityClass& cls) const {
  auto it = index_.find(cls.name());
  if (it == index_.end()) {
    throw InventoryError("class '" + cls.name() + "' is not in the inventory");
  }
  return it->second;
}

std::size_t LabelInventory::IdOf(const Tag& tag) const {
  switch (tag.kind()) {
    case TagKind::kOutside:
      return outside_id();
    case TagKind::kIgnore:
      return ignore_id();
    case TagKind::kBegin:
      return 1 + 2 * ClassIndex(tag.entity_class());
    case TagKind::kInside:
      return 2 + 2 * ClassIndex(tag.entity_class());
  }
  return outside_id();
}

Tag LabelInventory::TagOf(std::size_t id) const {
  if (id >= size()) {
    throw InventoryError("label id " + std::to_string(id) +
                         " out of range for inventory of " +
                         std::to_string(size()));
  }
  if (id == outside_id()) return Tag::Outside();
  if (id == ignore_id()) return Tag::Ignore();
  const EntityClass& cls = classes_[(id - 1) / 2];
  return (id % 2 == 1) ? Tag::Begin(cls) : Tag::Inside(cls);
}

LabelInventory BuildLabelInventory(std::vector<EntityClass> classes) {
  return LabelInventory(std::move(classes));
}

std::vector<CharRange> JoinedOffsets(std::span<const std::string> words) {
  std::vector<CharRange> offsets;
  offsets.reserve(words.size());
  std::size_t pos = 0;
  for (const auto& w : words) {
    const std::size_t len = utf8::Length(w);
    offsets.emplace_back(pos, pos + len);
    pos += len + 1;
  }
  return offsets;
}

AnnotatedSentence MakeSentence(std::vector<std::string> words,
                               std::vector<Tag> tags) {
  AnnotatedSentence s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) s.text += ' ';
    s.text += words[i];
  }
  s.char_offsets = JoinedOffsets(words);
  s.words = std::move(words);
  s.tags = std::move(tags);
  return s;
}

std::vector<Tag> RepairTagSequence(std::span<const Tag> tags) {
  std::vector<Tag> out;
  out.reserve(tags.size());
  for (const Tag& tag : tags) {
    if (tag.kind() == TagKind::kIgnore) {
      throw ContractError("cannot repair a tag sequence containing [PAD]");
    }
    if (tag.kind() == TagKind::kInside &&
        (out.empty() || !Continues(out.back(), tag))) {
      out.push_back(Tag::Begin(tag.entity_class()));
    } else {
      out.push_back(tag);
    }
  }
  return out;
}

bool IsLegalBio(std::span<const Tag> tags) {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].kind() == TagKind::kIgnore) return false;
    if (tags[i].kind() == TagKind::kInside &&
        (i == 0 || !Continues(tags[i - 1], tags[i]))) {
      return false;
    }
  }
  return true;
}

std::vector<EntitySpan> DecodeSpans(const AnnotatedSentence& sentence) {
  const auto& tags = sentence.tags;
  if (tags.size() != sentence.words.size() ||
      sentence.char_offsets.size() != sentence.words.size()) {
    throw ContractError("sentence words, tags and offsets differ in length");
  }
  std::vector<EntitySpan> spans;
  auto close = [&](std::size_t start, std::size_t end) {
    const std::size_t cs = sentence.char_offsets[start].first;
    const std::size_t ce = sentence.char_offsets[end].second;
    spans.push_back(EntitySpan{tags[start].entity_class(), start, end, cs, ce,
                               utf8::Substr(sentence.text, cs, ce)});
  };

  bool open = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const Tag& tag = tags[i];
    switch (tag.kind()) {
      case TagKind::kIgnore:
        throw ContractError("[PAD] tag in a word-level sentence");
      case TagKind::kOutside:
        if (open) close(start, i - 1);
        open = false;
        break;
      case TagKind::kInside:
        if (open && tags[start].entity_class() == tag.entity_class()) break;
        [[fallthrough]];
      case TagKind::kBegin:
        if (open) close(start, i - 1);
        open = true;
        start = i;
        break;
    }
  }
  if (open) close(start, tags.size() - 1);
  return spans;
}

AnnotatedSentence EncodeSpans(std::vector<std::string> words,
                              std::span<const EntitySpan> spans) {
  std::vector<const EntitySpan*> order;
  order.reserve(spans.size());
  for (const auto& s : spans) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const EntitySpan* a, const EntitySpan* b) {
              return a->word_start < b->word_start;
            });

  std::vector<Tag> tags(words.size(), Tag::Outside());
  std::size_t next_free = 0;
  for (const EntitySpan* span : order) {
    if (span->word_start > span->word_end || span->word_end >= words.size()) {
      throw EncodingError("span [" + std::to_string(span->word_start) + ", " +
                          std::to_string(span->word_end) +
                          "] is out of range for " +
                          std::to_string(words.size()) + " words");
    }
    if (span->word_start < next_free) {
      throw EncodingError("overlapping spans at word " +
                          std::to_string(span->word_start));
    }
    tags[span->word_start] = Tag::Begin(span->entity_class);
    for (std::size_t i = span->word_start + 1; i <= span->word_end; ++i) {
      tags[i] = Tag::Inside(span->entity_class);
    }
    next_free = span->word_end + 1;
  }
  return MakeSentence(std::move(words), std::move(tags));
}

}  // namespace arner
