// Copyright 2026 The symdp Authors
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

#ifndef SYMDP_RNG_H_
#define SYMDP_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace symdp {

// Seeded randomness stream. Streams are split by key rather than by engine
// state, so a child stream depends only on (seed, key) and never on how many
// draws the parent has made.
//
// Not thread-safe: give each thread its own Split() stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng Split(std::uint64_t key) const;

  // Uniform on [0, 1) with 53 random bits; consumes one engine output.
  double Uniform();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Inverse-CDF selection: smallest i with u < p[0] + ... + p[i]. Falls back to
// the last index with positive probability when rounding leaves u uncovered.
std::size_t SampleIndex(std::span<const long double> probabilities, double u);

}  // namespace symdp

#endif  // SYMDP_RNG_H_
