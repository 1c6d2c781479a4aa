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

#include "arner/utf8.h"

#include <unicode/utf8.h>

#include <cstdint>

namespace arner::utf8 {
namespace {

// Calls fn(code_point, byte_begin, byte_end) for every code point and
// returns false if any sequence was ill-formed.
template <typename Fn>
bool ForEach(std::string_view text, Fn&& fn) {
  bool well_formed = true;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) well_formed = false;
    fn(c < 0 ? kReplacementChar : static_cast<char32_t>(c),
       static_cast<std::size_t>(start), static_cast<std::size_t>(i));
  }
  return well_formed;
}

}  // namespace

std::u32string Decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  ForEach(text, [&](char32_t c, std::size_t, std::size_t) { out.push_back(c); });
  return out;
}

std::string Encode(char32_t cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacementChar;
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(cp));
  return std::string(reinterpret_cast<const char*>(buf),
                     static_cast<std::size_t>(n));
}

std::string Encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t c : cps) out += Encode(c);
  return out;
}

std::size_t Length(std::string_view text) {
  std::size_t n = 0;
  ForEach(text, [&](char32_t, std::size_t, std::size_t) { ++n; });
  return n;
}

std::string Substr(std::string_view text, std::size_t begin, std::size_t end) {
  std::size_t index = 0;
  std::size_t byte_begin = text.size();
  std::size_t byte_end = text.size();
  bool found_begin = false;
  ForEach(text, [&](char32_t, std::size_t b, std::size_t) {
    if (index == begin) {
      byte_begin = b;
      found_begin = true;
    }
    if (index == end) byte_end = b;
    ++index;
  });
  if (!found_begin || end <= begin) return {};
  return std::string(text.substr(byte_begin, byte_end - byte_begin));
}

std::string Sanitize(std::string_view text) {
  if (IsValid(text)) return std::string(text);
  return Encode(Decode(text));
}

bool IsValid(std::string_view text) {
  return ForEach(text, [](char32_t, std::size_t, std::size_t) {});
}

}  // namespace arner::utf8
