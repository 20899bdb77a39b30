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

#include "autocomm/channel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace autocomm::channel {

namespace {

// Parametric slack for "strictly inside": segment pieces shorter than this
// fraction are treated as touching.
constexpr double kParamEps = 1e-9;

}  // namespace

Vec3 Facade::normal() const {
  Vec3 n{};
  n[axis] = static_cast<double>(sign);
  return n;
}

Vec3 Facade::point(double u, double z) const {
  Vec3 p{};
  p[axis] = coord;
  p[u_axis()] = u;
  p.z = z;
  return p;
}

bool Facade::contains(Vec3 p) const {
  const double u = p[u_axis()];
  return u >= u_min && u <= u_max && p.z >= z_min && p.z <= z_max;
}

std::vector<Facade> facades_of(const std::vector<Building>& buildings) {
  std::vector<Facade> out;
  for (std::size_t i = 0; i < buildings.size(); ++i) {
    const auto& b = buildings[i];
    const int id = static_cast<int>(out.size());
    const int bi = static_cast<int>(i);
    out.push_back({id, bi, 1, b.y_min, -1, b.x_min, b.x_max, 0.0, b.height});
    out.push_back({id + 1, bi, 1, b.y_max, +1, b.x_min, b.x_max, 0.0, b.height});
    out.push_back({id + 2, bi, 0, b.x_min, -1, b.y_min, b.y_max, 0.0, b.height});
    out.push_back({id + 3, bi, 0, b.x_max, +1, b.y_min, b.y_max, 0.0, b.height});
  }
  return out;
}

Scene3D make_scene(const ChannelSceneConfig& cfg) {
  Scene3D s;
  s.buildings = cfg.buildings;
  s.facades = facades_of(cfg.buildings);
  s.bs = cfg.bs_pos;
  s.carrier_hz = cfg.carrier_hz;
  s.num_antennas = cfg.num_antennas;
  s.reflection_coeff = cfg.reflection_coeff;
  return s;
}

bool inside_box(const Building& b, Vec3 p) {
  return p.x >= b.x_min && p.x <= b.x_max && p.y >= b.y_min && p.y <= b.y_max && p.z >= 0.0 &&
         p.z <= b.height;
}

std::optional<Vec3> unbounded_reflection_point(Vec3 bs, Vec3 user, const Facade& f) {
  const double db = f.side(bs);
  const double du = f.side(user);
  if (db == 0.0 || du == 0.0) throw DegenerateGeometry("endpoint lies on the facade plane");
  if (db < 0.0 || du < 0.0) return std::nullopt;
  // Mirror image sits at -db; the plane crossing is at db / (db + du) of the way.
  Vec3 mirror = bs;
  mirror[f.axis] = f.coord - static_cast<double>(f.sign) * db;
  const double t = db / (db + du);
  Vec3 p = mirror + t * (user - mirror);
  p[f.axis] = f.coord;
  return p;
}

std::optional<Vec3> mirror_reflection_point(Vec3 bs, Vec3 user, const Facade& f) {
  auto p = unbounded_reflection_point(bs, user, f);
  if (p && !f.contains(*p)) return std::nullopt;
  return p;
}

bool is_blocked(Vec3 a, Vec3 b, const std::vector<Building>& buildings) {
  const Vec3 d = b - a;
  for (const auto& box : buildings) {
    const double lo[3] = {box.x_min, box.y_min, 0.0};
    const double hi[3] = {box.x_max, box.y_max, box.height};
    double t0 = 0.0;
    double t1 = 1.0;
    bool miss = false;
    for (int k = 0; k < 3 && !miss; ++k) {
      if (d[k] == 0.0) {
        if (!(a[k] > lo[k] && a[k] < hi[k])) miss = true;
        continue;
      }
      double ta = (lo[k] - a[k]) / d[k];
      double tb = (hi[k] - a[k]) / d[k];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t1 - t0 <= kParamEps) miss = true;
    }
    if (!miss) return true;
  }
  return false;
}

std::vector<bool> classify_scatterers(const Scene3D& scene, Vec3 bs, Vec3 user) {
  std::vector<bool> out(scene.facades.size(), false);
  for (std::size_t i = 0; i < scene.facades.size(); ++i) {
    const auto p = mirror_reflection_point(bs, user, scene.facades[i]);
    out[i] = p && !is_blocked(bs, *p, scene.buildings) && !is_blocked(*p, user, scene.buildings);
  }
  return out;
}

double reflection_residual_rad(Vec3 bs, Vec3 user, Vec3 point, const Facade& f) {
  const Vec3 in = point - bs;
  const Vec3 n = f.normal();
  const Vec3 mirrored = in - (2.0 * dot(in, n)) * n;
  const Vec3 out = user - point;
  return std::atan2(norm(cross(mirrored, out)), dot(mirrored, out));
}

}  // namespace autocomm::channel
