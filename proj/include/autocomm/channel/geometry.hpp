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
#include <optional>
#include <vector>

#include "autocomm/core/config.hpp"
#include "autocomm/core/error.hpp"
#include "autocomm/core/vec3.hpp"

namespace autocomm::channel {

inline constexpr double kSpeedOfLight = 299792458.0;

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Vertical rectangle on an axis-aligned plane. `axis` is the plane normal's
/// axis (0 = x, 1 = y); the in-plane horizontal coordinate u runs along the
/// other horizontal axis.
struct Facade {
  int id = 0;
  int building = -1;  // -1 for free-standing test facades
  int axis = 1;
  double coord = 0.0;  // plane position along `axis`
  int sign = 1;        // outward normal direction along `axis`
  double u_min = 0.0;
  double u_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;

  Vec3 normal() const;
  /// Signed distance along the outward normal.
  double side(Vec3 p) const { return (p[axis] - coord) * sign; }
  int u_axis() const { return 1 - axis; }
  Vec3 point(double u, double z) const;
  bool contains(Vec3 p) const;  // on the plane, inside the extent (inclusive)
};

struct Scene3D {
  std::vector<Building> buildings;
  std::vector<Facade> facades;  // 4 per building: y_min, y_max, x_min, x_max
  Vec3 bs;
  double carrier_hz = 3.5e9;
  int num_antennas = 16;
  std::complex<double> reflection_coeff{0.6, 0.0};

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
};

Scene3D make_scene(const ChannelSceneConfig& cfg);
std::vector<Facade> facades_of(const std::vector<Building>& buildings);

bool inside_box(const Building& b, Vec3 p);  // closed box

/// Mirrors `bs` across the facade plane and intersects the segment from the
/// mirror image to `user` with the plane. Returns nothing when either point
/// is behind the facade or the intersection falls outside the extent.
/// Throws DegenerateGeometry when either point lies on the plane.
std::optional<Vec3> mirror_reflection_point(Vec3 bs, Vec3 user, const Facade& f);

/// Same plane intersection without the extent check.
std::optional<Vec3> unbounded_reflection_point(Vec3 bs, Vec3 user, const Facade& f);

/// True iff the open segment a-b passes through the interior of a building.
/// Touching a face or ending on it does not block.
bool is_blocked(Vec3 a, Vec3 b, const std::vector<Building>& buildings);

/// Per facade: a reflection point exists and both legs are unblocked.
std::vector<bool> classify_scatterers(const Scene3D& scene, Vec3 bs, Vec3 user);

/// Angle between the mirrored incident direction and the outgoing direction.
double reflection_residual_rad(Vec3 bs, Vec3 user, Vec3 point, const Facade& f);

}  // namespace autocomm::channel
