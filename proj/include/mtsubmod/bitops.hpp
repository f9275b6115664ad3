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

#pragma once

// Word-level bit-set kernels used by coverage evaluation.
//
// Every kernel operates on arrays of 64-bit words of equal length. A scalar
// reference table is always available; vectorized tables (AVX2 on x86-64,
// NEON on AArch64) are selected at runtime when the CPU supports them and
// must produce bit-identical results to the scalar table.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mtsubmod::bitops {

using Word = std::uint64_t;

struct KernelTable {
  std::string_view name;
  // popcount(a)
  std::uint64_t (*popcount)(const Word* a, std::size_t words);
  // dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  // dst |= src; returns popcount(dst)
  std::uint64_t (*or_into_popcount)(Word* dst, const Word* src, std::size_t words);
  // popcount(a & ~b)
  std::uint64_t (*andnot_popcount)(const Word* a, const Word* b, std::size_t words);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the running CPU lacks the instruction set.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best table for this CPU. Setting MT_SUBMOD_KERNELS=scalar in the
// environment pins the scalar reference (read once, on first call).
const KernelTable& active_kernels();

// All tables usable on this CPU, scalar first.
std::vector<const KernelTable*> available_kernels();

inline std::uint64_t popcount(std::span<const Word> a) {
  return active_kernels().popcount(a.data(), a.size());
}

inline std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace mtsubmod::bitops
