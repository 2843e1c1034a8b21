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

#include "chronomask/date.h"

#include <cstdio>

#include "chronomask/error.h"

namespace chronomask {

namespace {

bool parse_digits(std::string_view text, int* value) {
  int result = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
    result = result * 10 + (c - '0');
  }
  *value = result;
  return true;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int year, month, day;
  if (!parse_digits(text.substr(0, 4), &year) ||
      !parse_digits(text.substr(5, 2), &month) ||
      !parse_digits(text.substr(8, 2), &day)) {
    return std::nullopt;
  }
  Date date{std::chrono::year(year), std::chrono::month(month),
            std::chrono::day(day)};
  if (!date.ok()) return std::nullopt;
  return date;
}

Date parse_date_or_throw(std::string_view text, std::string_view what) {
  auto date = parse_date(text);
  if (!date) {
    throw Error("invalid date '" + std::string(text) + "' for " +
                std::string(what) + " (expected YYYY-MM-DD)");
  }
  return *date;
}

std::string format_date(const Date& date) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buffer;
}

}  // namespace chronomask
