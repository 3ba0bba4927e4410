/*
 * Copyright 2026 The hsidj Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HSIDJ_RANDOM_H_
#define HSIDJ_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace hsidj {

// Portable seeded randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; every derived draw below is defined
// here instead of through std::*_distribution, whose algorithms differ
// between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound) by rejection: draws below
  // (2^64 - bound) mod bound are discarded, the rest are reduced mod bound.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits of one draw.
  double UniformUnit();

  // Standard normal via Box-Muller; consumes two draws per pair and caches
  // the second variate.
  double StandardNormal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Fisher-Yates: for i = n-1 down to 1, swap element i with element
// UniformBelow(i + 1).
template <typename T>
void Shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.UniformBelow(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace hsidj

#endif  // HSIDJ_RANDOM_H_
