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

#include <complex>
#include <vector>

#include "autocomm/channel/geometry.hpp"

namespace autocomm::channel {

using Complex = std::complex<double>;
using ChannelVector = std::vector<Complex>;

inline constexpr double kNmseFloorDb = -150.0;

struct Path {
  enum class Kind { LoS, SingleReflection };
  Kind kind = Kind::LoS;
  int facade = -1;        // reflections only
  Vec3 reflection_point;  // reflections only
  double aod_rad = 0.0;   // azimuth at the BS, from array broadside (+y) towards +x
  double aoa_rad = 0.0;   // azimuth of the arrival direction at the user
  double length_m = 0.0;
  double delay_s = 0.0;
  Complex gain;
};

/// LoS first when present, then reflections in facade order.
using PathSet = std::vector<Path>;

/// Horizontal azimuth of `to - from`; 0 along +y, +pi/2 along +x.
double azimuth(Vec3 from, Vec3 to);

/// Free-space gain of a path of the given length with `bounces` reflections.
Complex path_gain(double length_m, int bounces, const Scene3D& scene);

Path make_los_path(Vec3 bs, Vec3 user, const Scene3D& scene);
Path make_reflection_path(Vec3 bs, Vec3 user, Vec3 point, int facade, const Scene3D& scene);

PathSet trace_paths(const Scene3D& scene, Vec3 bs, Vec3 user);
inline PathSet trace_paths(const Scene3D& scene, Vec3 user) { return trace_paths(scene, scene.bs, user); }

/// h[n] = sum_l g_l exp(-j pi n sin(aod_l)), half-wavelength ULA along x.
ChannelVector synthesize_channel(const PathSet& paths, int num_antennas);

/// 10 log10(|h_true - h_pred|^2 / |h_true|^2), floored at kNmseFloorDb.
double nmse_db(const ChannelVector& h_true, const ChannelVector& h_pred);
/// Linear error ratio without the floor.
double nmse_ratio(const ChannelVector& h_true, const ChannelVector& h_pred);
double ratio_to_db(double ratio);

}  // namespace autocomm::channel
