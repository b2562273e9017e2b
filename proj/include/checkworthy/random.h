// Copyright 2026 The Checkworthy Authors.
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

#ifndef CHECKWORTHY_RANDOM_H_
#define CHECKWORTHY_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>

namespace checkworthy {

// Seeded generator whose derived draws are identical on every platform.
// std::mt19937_64 output is fixed by the standard but the std distributions
// are not, so the distributions used by the toolkit are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// Sub-seed for stream `index` of a master seed (splitmix64 finalizer), so
// parallel work items get independent streams regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace checkworthy

#endif  // CHECKWORTHY_RANDOM_H_
