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

#ifndef CHRONOMASK_DATE_H_
#define CHRONOMASK_DATE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace chronomask {

using Date = std::chrono::year_month_day;

// Parses a strict "YYYY-MM-DD" calendar date. Returns nullopt for anything
// else, including impossible dates such as 2021-02-30.
std::optional<Date> parse_date(std::string_view text);

// Like parse_date but throws chronomask::Error naming `what` on failure.
Date parse_date_or_throw(std::string_view text, std::string_view what);

std::string format_date(const Date& date);

}  // namespace chronomask

#endif  // CHRONOMASK_DATE_H_
