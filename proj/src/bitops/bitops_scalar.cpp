// Copyright 2026 The mt-submod Authors.
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

#include <bit>

#include "mtsubmod/bitops.hpp"

namespace mtsubmod::bitops {
namespace {

std::uint64_t popcount_scalar(const Word* a, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

void or_into_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

std::uint64_t or_into_popcount_scalar(Word* dst, const Word* src, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) {
    dst[i] |= src[i];
    total += std::popcount(dst[i]);
  }
  return total;
}

std::uint64_t andnot_popcount_scalar(const Word* a, const Word* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", popcount_scalar, or_into_scalar,
                                 or_into_popcount_scalar, andnot_popcount_scalar};
  return table;
}

}  // namespace mtsubmod::bitops
