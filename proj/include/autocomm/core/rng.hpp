// Copyright 2026 The Autocomm Authors
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
#include <string_view>

namespace autocomm {

/// Deterministic random stream keyed by (seed, label).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The std distributions are not portable, so every conversion to
/// a double or a bounded integer is done here. Stream keys are derived with
/// SplitMix64 over the seed and a 64-bit FNV-1a hash of the label.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one value per call).
  double normal();

  /// Independent child stream; children with distinct indices never share a
  /// key with each other or with the parent.
  RngStream derive(std::uint64_t index) const;
  RngStream derive(std::string_view label) const;

  std::uint64_t key() const noexcept { return key_; }

 private:
  explicit RngStream(std::uint64_t key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Shorthand matching the scenario API: stream(seed, label).
inline RngStream stream(std::uint64_t seed, std::string_view label) { return {seed, label}; }

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace autocomm
