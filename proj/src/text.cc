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

#include "chronomask/text.h"

#include <algorithm>

namespace chronomask {

namespace {

// Length of the well-formed UTF-8 sequence starting at `pos`, or 1 when the
// bytes there are not a valid sequence.
std::size_t sequence_length(std::string_view text, std::size_t pos) {
  unsigned char lead = static_cast<unsigned char>(text[pos]);
  std::size_t len = 1;
  if (lead >= 0xc2 && lead <= 0xdf) {
    len = 2;
  } else if (lead >= 0xe0 && lead <= 0xef) {
    len = 3;
  } else if (lead >= 0xf0 && lead <= 0xf4) {
    len = 4;
  }
  if (pos + len > text.size()) return 1;
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xc0) != 0x80) return 1;
  }
  return len;
}

}  // namespace

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Utf8Index::Utf8Index(std::string_view text) {
  starts_.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    starts_.push_back(pos);
    pos += sequence_length(text, pos);
  }
  starts_.push_back(text.size());
}

std::size_t Utf8Index::codepoint_at(std::size_t byte) const {
  auto it = std::lower_bound(starts_.begin(), starts_.end(), byte);
  if (it == starts_.end() || *it != byte) return npos;
  return static_cast<std::size_t>(it - starts_.begin());
}

std::size_t utf8_length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size(); pos += sequence_length(text, pos)) {
    ++count;
  }
  return count;
}

std::vector<NameToken> name_tokens(std::string_view text) {
  std::vector<NameToken> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_word_byte(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_word_byte(text[j])) ++j;
      tokens.push_back({i, j});
      i = j;
    } else if (is_punct_byte(c)) {
      tokens.push_back({i, i + 1});
      ++i;
    } else {
      ++i;
    }
  }
  return tokens;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  for (const NameToken& token : name_tokens(name)) {
    if (!out.empty()) out.push_back(' ');
    out += ascii_lower(name.substr(token.begin, token.end - token.begin));
  }
  return out;
}

}  // namespace chronomask
