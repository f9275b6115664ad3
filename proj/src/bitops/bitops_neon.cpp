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

#include "mtsubmod/bitops.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <bit>

namespace mtsubmod::bitops {
namespace {

inline std::uint64_t count_q(uint64x2_t v) {
  const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
  return vaddlvq_u8(bytes);
}

std::uint64_t popcount_neon(const Word* a, std::size_t words) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) total += count_q(vld1q_u64(a + i));
  for (; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

void or_into_neon(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

std::uint64_t or_into_popcount_neon(Word* dst, const Word* src, std::size_t words) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    const uint64x2_t merged = vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i));
    vst1q_u64(dst + i, merged);
    total += count_q(merged);
  }
  for (; i < words; ++i) {
    dst[i] |= src[i];
    total += std::popcount(dst[i]);
  }
  return total;
}

std::uint64_t andnot_popcount_neon(const Word* a, const Word* b, std::size_t words) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  // vbicq computes first & ~second
  for (; i + 2 <= words; i += 2) total += count_q(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < words; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon", popcount_neon, or_into_neon, or_into_popcount_neon,
                                 andnot_popcount_neon};
  return &table;
}

}  // namespace mtsubmod::bitops

#else

namespace mtsubmod::bitops {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace mtsubmod::bitops

#endif
