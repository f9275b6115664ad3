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

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define MTSUBMOD_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#endif

#include <bit>

namespace mtsubmod::bitops {

#if MTSUBMOD_HAVE_AVX2_BUILD

// Functions carry a target attribute instead of compiling the file with
// -mavx2, so nothing else in this translation unit picks up AVX2 encodings.
#define MTSUBMOD_AVX2 __attribute__((target("avx2")))

namespace {

// Nibble lookup popcount (Mula, Kurz, Lemire) on one 256-bit vector,
// returning four 64-bit partial sums.
MTSUBMOD_AVX2 inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts =
      _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

MTSUBMOD_AVX2 inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

MTSUBMOD_AVX2 std::uint64_t popcount_avx2(const Word* a, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(v));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

MTSUBMOD_AVX2 void or_into_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), s));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

MTSUBMOD_AVX2 std::uint64_t or_into_popcount_avx2(Word* dst, const Word* src, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i merged = _mm256_or_si256(_mm256_loadu_si256(d), s);
    _mm256_storeu_si256(d, merged);
    acc = _mm256_add_epi64(acc, popcount_lanes(merged));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < words; ++i) {
    dst[i] |= src[i];
    total += std::popcount(dst[i]);
  }
  return total;
}

MTSUBMOD_AVX2 std::uint64_t andnot_popcount_avx2(const Word* a, const Word* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot computes ~first & second
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_andnot_si256(vb, va)));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < words; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{"avx2", popcount_avx2, or_into_avx2, or_into_popcount_avx2,
                                 andnot_popcount_avx2};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace mtsubmod::bitops
