// Copyright 2026 The Coherence Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coherence/numerics.hpp"

namespace coherence {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, output is a fixed
/// bijective mix of a Weyl sequence. Chosen over <random> engines plus
/// distributions because the standard distributions are not portable across
/// library implementations, and falsifier certificates must replay anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via Box-Muller; the second variate is cached.
  double gaussian();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  Complex complex_gaussian();
  /// Uniformly random unit vector in C^n.
  ComplexVector unit_vector(std::size_t n);
  /// Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::uint64_t state_;
  std::optional<double> cached_gaussian_;
};

/// The SplitMix64 finalizer on its own.
std::uint64_t mix64(std::uint64_t x);

}  // namespace coherence
