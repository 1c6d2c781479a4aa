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

// UTF-8 helpers. All character offsets in the library count Unicode code
// points, not bytes. Ill-formed byte sequences decode to U+FFFD.

#ifndef ARNER_UTF8_H_
#define ARNER_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace arner::utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;

std::u32string Decode(std::string_view text);

std::string Encode(char32_t cp);
std::string Encode(std::u32string_view cps);

// Number of code points in `text`.
std::size_t Length(std::string_view text);

// Code points [begin, end) of `text`, clamped to its length.
std::string Substr(std::string_view text, std::size_t begin, std::size_t end);

// Re-encodes `text`, replacing ill-formed sequences with U+FFFD.
std::string Sanitize(std::string_view text);

bool IsValid(std::string_view text);

}  // namespace arner::utf8

#endif  // ARNER_UTF8_H_
