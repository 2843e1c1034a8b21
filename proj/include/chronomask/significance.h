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

#ifndef CHRONOMASK_SIGNIFICANCE_H_
#define CHRONOMASK_SIGNIFICANCE_H_

#include <cstdint>
#include <optional>

#include "chronomask/classifier.h"

namespace chronomask {

// Below this many discordant pairs the exact binomial test is used.
inline constexpr std::uint64_t kExactDiscordantLimit = 25;

struct McNemarResult {
  std::uint64_t b = 0;  // baseline right, contender wrong
  std::uint64_t c = 0;  // baseline wrong, contender right
  std::optional<double> statistic;  // empty for the exact test
  double p_raw = 1.0;
  double p_adjusted = 1.0;  // min(1, m * p_raw)
  std::uint32_t m = 1;

  bool exact() const { return !statistic.has_value(); }
};

// Two-sided exact binomial p: min(1, 2 * sum_{k<=min(b,c)} C(b+c,k) / 2^(b+c)).
double mcnemar_exact_p(std::uint64_t b, std::uint64_t c);

// Continuity-corrected chi-square, 1 degree of freedom. Returns the p value
// and stores (|b-c|-1)^2/(b+c) in *statistic. Requires b + c > 0.
double mcnemar_chi_square_p(std::uint64_t b, std::uint64_t c, double* statistic);

// Chooses the exact test when b + c < kExactDiscordantLimit, otherwise the
// chi-square test, and applies a Bonferroni correction over m comparisons.
// min(1, m * p_raw). Throws UsageError when m is 0.
double bonferroni(double p_raw, std::uint32_t m);

McNemarResult mcnemar_from_counts(std::uint64_t b, std::uint64_t c,
                                  std::uint32_t m);

// Compares two evaluations of the same test documents in the same order.
// Throws Error if the document ids or gold labels differ.
McNemarResult mcnemar(const EvalCell& baseline, const EvalCell& contender,
                      std::uint32_t m);

}  // namespace chronomask

#endif  // CHRONOMASK_SIGNIFICANCE_H_
