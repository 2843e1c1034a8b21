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

#ifndef CHRONOMASK_RANDOM_H_
#define CHRONOMASK_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace chronomask {

// Seeded generator used for every random decision in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Bounded integers come from rejection sampling and reals from the
// top 53 bits, so results never depend on the standard library's
// distribution implementations and are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle, walking from the back: for i = n-1 down to 1, swap
// item i with item below(i + 1).
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// SplitMix64 finalizer; used to derive independent seeds and for hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace chronomask

#endif  // CHRONOMASK_RANDOM_H_
