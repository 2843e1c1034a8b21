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

#include "chronomask/significance.h"

#include <algorithm>
#include <cmath>

#include "chronomask/error.h"

namespace chronomask {

double mcnemar_exact_p(std::uint64_t b, std::uint64_t c) {
  const std::uint64_t n = b + c;
  const std::uint64_t k_max = std::min(b, c);
  if (n <= 60) {
    // Integer binomial sum; exact for every n that reaches this branch in
    // practice.
    unsigned __int128 choose = 1, sum = 0;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
      sum += choose;
      choose = choose * (n - k) / (k + 1);
    }
    return std::min(1.0, std::ldexp(static_cast<double>(sum), 1 - static_cast<int>(n)));
  }
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  double tail = 0.0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double log_choose = std::lgamma(static_cast<double>(n) + 1) -
                              std::lgamma(static_cast<double>(k) + 1) -
                              std::lgamma(static_cast<double>(n - k) + 1);
    tail += std::exp(log_choose + log_half_n);
  }
  return std::min(1.0, 2.0 * tail);
}

double mcnemar_chi_square_p(std::uint64_t b, std::uint64_t c, double* statistic) {
  if (b + c == 0) throw Error("chi-square McNemar test needs discordant pairs");
  const double diff = std::fabs(static_cast<double>(b) - static_cast<double>(c));
  const double corrected = std::max(0.0, diff - 1.0);
  const double stat = corrected * corrected / static_cast<double>(b + c);
  if (statistic) *statistic = stat;
  // Upper tail of chi-square with 1 dof: P(Z^2 > s) = erfc(sqrt(s / 2)).
  return std::erfc(std::sqrt(stat / 2.0));
}

double bonferroni(double p_raw, std::uint32_t m) {
  if (m == 0) throw UsageError("comparison count m must be positive");
  return std::min(1.0, static_cast<double>(m) * p_raw);
}

McNemarResult mcnemar_from_counts(std::uint64_t b, std::uint64_t c,
                                  std::uint32_t m) {
  if (m == 0) throw UsageError("comparison count m must be positive");
  McNemarResult result;
  result.b = b;
  result.c = c;
  result.m = m;
  if (b + c < kExactDiscordantLimit) {
    result.p_raw = mcnemar_exact_p(b, c);
  } else {
    double stat = 0.0;
    result.p_raw = mcnemar_chi_square_p(b, c, &stat);
    result.statistic = stat;
  }
  result.p_adjusted = bonferroni(result.p_raw, m);
  return result;
}

McNemarResult mcnemar(const EvalCell& baseline, const EvalCell& contender,
                      std::uint32_t m) {
  if (baseline.document_ids != contender.document_ids ||
      baseline.gold != contender.gold ||
      baseline.predictions.size() != baseline.gold.size() ||
      contender.predictions.size() != contender.gold.size()) {
    throw Error("McNemar test needs both evaluations on the same test set in "
                "the same order ('" + baseline.test_set + "' vs '" +
                contender.test_set + "')");
  }
  std::uint64_t b = 0, c = 0;
  for (std::size_t i = 0; i < baseline.gold.size(); ++i) {
    const bool base_right = baseline.predictions[i] == baseline.gold[i];
    const bool cont_right = contender.predictions[i] == contender.gold[i];
    if (base_right && !cont_right) ++b;
    if (!base_right && cont_right) ++c;
  }
  return mcnemar_from_counts(b, c, m);
}

}  // namespace chronomask
