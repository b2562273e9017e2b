// Copyright 2026 The Checkworthy Authors.
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

#ifndef CHECKWORTHY_SRC_UNICODE_H_
#define CHECKWORTHY_SRC_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace checkworthy::unicode {

// Decodes the code point starting at `pos` and advances `pos` past it.
// Malformed sequences decode to U+FFFD and consume one byte.
char32_t decode(std::string_view s, std::size_t& pos);

// Code point ending just before `pos` (pos > 0); sets `start` to its offset.
char32_t decode_before(std::string_view s, std::size_t pos, std::size_t& start);

void append_utf8(std::string& out, char32_t cp);

enum class CharClass {
  kWord,   // letters and digits, including non-ASCII letters
  kQuote,  // straight and curly single/double quotation marks
  kSpace,
  kPunct,  // everything else: punctuation, symbols, emoji, controls
};

CharClass classify(char32_t cp);

inline bool is_word(char32_t cp) { return classify(cp) == CharClass::kWord; }
inline bool is_space(char32_t cp) { return classify(cp) == CharClass::kSpace; }
inline bool is_quote(char32_t cp) { return classify(cp) == CharClass::kQuote; }
inline bool is_double_quote(char32_t cp) {
  return cp == U'"' || cp == U'“' || cp == U'”';
}

inline bool is_ascii_upper(char32_t cp) { return cp >= U'A' && cp <= U'Z'; }
inline bool is_ascii_lower(char32_t cp) { return cp >= U'a' && cp <= U'z'; }
inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }
inline bool is_ascii_alnum(char32_t cp) {
  return is_ascii_upper(cp) || is_ascii_lower(cp) || is_ascii_digit(cp);
}

}  // namespace checkworthy::unicode

#endif  // CHECKWORTHY_SRC_UNICODE_H_
