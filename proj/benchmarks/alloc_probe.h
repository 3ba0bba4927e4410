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

#ifndef HSIDJ_BENCHMARKS_ALLOC_PROBE_H_
#define HSIDJ_BENCHMARKS_ALLOC_PROBE_H_

#include <cstddef>

namespace hsidj::alloc_probe {

// Heap bytes currently live through global operator new.
std::size_t CurrentBytes();
// High-water mark of CurrentBytes() since the last ResetPeak().
std::size_t PeakBytes();
void ResetPeak();

// Peak heap growth over the lifetime of the scope, relative to the live
// bytes at construction.
class PeakScope {
 public:
  PeakScope();
  std::size_t PeakAdditionalBytes() const;

 private:
  std::size_t baseline_;
};

}  // namespace hsidj::alloc_probe

#endif  // HSIDJ_BENCHMARKS_ALLOC_PROBE_H_
