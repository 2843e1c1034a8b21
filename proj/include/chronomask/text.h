// Copyright 2026 The Chronomask Authors.
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

// Byte-level text helpers shared by the tokenizer, the gazetteer tagger and
// the entity index.
//
// Case folding is ASCII-only: bytes >= 0x80 pass through unchanged and are
// treated as word characters, which keeps multi-byte UTF-8 sequences intact.

#ifndef CHRONOMASK_TEXT_H_
#define CHRONOMASK_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace chronomask {

inline bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool is_word_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u >= 0x80;
}

// ASCII punctuation: any printable, non-space, non-alphanumeric byte < 0x80.
inline bool is_punct_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u > 0x20 && u < 0x7f && !is_word_byte(c);
}

std::string ascii_lower(std::string_view text);

// Maps between code-point offsets and byte offsets of a UTF-8 string.
// Decoding is lenient: a byte that does not start a well-formed sequence
// counts as one code point on its own.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  // Number of code points.
  std::size_t size() const { return starts_.size() - 1; }

  // Byte offset of code point `cp`; cp == size() yields the byte length.
  std::size_t byte_offset(std::size_t cp) const { return starts_[cp]; }

  // Code-point index of the code point starting at byte `byte`, or npos if
  // `byte` is not a code-point boundary.
  std::size_t codepoint_at(std::size_t byte) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> starts_;
};

std::size_t utf8_length(std::string_view text);

// A token used for name matching: a maximal run of word bytes, or a single
// punctuation byte. Offsets are byte offsets into the scanned text.
struct NameToken {
  std::size_t begin;
  std::size_t end;
};

std::vector<NameToken> name_tokens(std::string_view text);

// Casefolds `name` and re-joins its name tokens with single spaces, so
// "New  York" and "new york" normalize identically and "U.S." becomes
// "u . s .".
std::string normalize_name(std::string_view name);

}  // namespace chronomask

#endif  // CHRONOMASK_TEXT_H_
