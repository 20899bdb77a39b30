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

#include "autocomm/channel/geometry.hpp"

namespace autocomm::channel {

struct GridOracleResult {
  Vec3 point;                 // grid point minimizing |bs-p| + |p-user|
  double path_length = 0.0;
  bool on_boundary = false;   // minimizer sits on the rectangle's edge
  bool interior_solution = false;
  Vec3 refined_point;         // continuous minimizer over the whole plane
  double residual_rad = 0.0;  // law-of-reflection residual at `point`
  std::int64_t evaluated = 0;
};

/// Exhaustive search over a grid of the facade rectangle with the given
/// spacing (edges always included). Existence: an interior grid minimizer
/// means a reflection point exists. A boundary minimizer is followed by a
/// Newton descent of the path length over the unbounded plane; the solution
/// exists only if that continuous minimizer lies inside the extent.
/// Both endpoints must be strictly outside the facade plane.
GridOracleResult grid_search_reflection_oracle(Vec3 bs, Vec3 user, const Facade& f,
                                               double resolution_m);

/// Single-threaded reference; returns the same result bit for bit.
GridOracleResult grid_search_reflection_oracle_serial(Vec3 bs, Vec3 user, const Facade& f,
                                                      double resolution_m);

}  // namespace autocomm::channel
