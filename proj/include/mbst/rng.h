// Copyright 2026 The mbst Authors
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
#include <random>

namespace mbst {

/// Deterministic 64-bit seeded generator. Each measurement consumes exactly
/// one draw in [0, 1); the outcome is +1 iff the draw is below p(+1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// 53 high bits of one engine output scaled to [0, 1). Unlike
  /// std::uniform_real_distribution this is identical on every platform.
  double draw() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal variate, for Haar-random test states.
  double normal() { return normal_(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// SplitMix64 finalizer over (base_seed, index). Per-shot seeds are
/// mix_seed(seed, shot); this function is part of the trace format.
std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace mbst
