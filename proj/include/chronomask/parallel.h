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

#ifndef CHRONOMASK_PARALLEL_H_
#define CHRONOMASK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace chronomask {

// 0 means "all hardware threads".
unsigned resolve_threads(unsigned requested);

// Runs fn(i) for every i in [0, n) on up to `threads` workers. Callers write
// results into per-index slots, so output never depends on scheduling. If
// any call throws, the exception from the lowest index is rethrown after all
// workers finish.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace chronomask

#endif  // CHRONOMASK_PARALLEL_H_
