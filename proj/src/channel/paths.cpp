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

#include "autocomm/channel/paths.hpp"

#include <cmath>
#include <numbers>

namespace autocomm::channel {

double azimuth(Vec3 from, Vec3 to) { return std::atan2(to.x - from.x, to.y - from.y); }

Complex path_gain(double length_m, int bounces, const Scene3D& scene) {
  const double lambda = scene.wavelength();
  const double amplitude = lambda / (4.0 * std::numbers::pi * length_m);
  Complex g = amplitude * std::polar(1.0, -2.0 * std::numbers::pi * length_m / lambda);
  for (int b = 0; b < bounces; ++b) g *= scene.reflection_coeff;
  return g;
}

Path make_los_path(Vec3 bs, Vec3 user, const Scene3D& scene) {
  Path p;
  p.kind = Path::Kind::LoS;
  p.aod_rad = azimuth(bs, user);
  p.aoa_rad = azimuth(user, bs);
  p.length_m = distance(bs, user);
  p.delay_s = p.length_m / kSpeedOfLight;
  p.gain = path_gain(p.length_m, 0, scene);
  return p;
}

Path make_reflection_path(Vec3 bs, Vec3 user, Vec3 point, int facade, const Scene3D& scene) {
  Path p;
  p.kind = Path::Kind::SingleReflection;
  p.facade = facade;
  p.reflection_point = point;
  p.aod_rad = azimuth(bs, point);
  p.aoa_rad = azimuth(user, point);
  p.length_m = distance(bs, point) + distance(point, user);
  p.delay_s = p.length_m / kSpeedOfLight;
  p.gain = path_gain(p.length_m, 1, scene);
  return p;
}

PathSet trace_paths(const Scene3D& scene, Vec3 bs, Vec3 user) {
  PathSet out;
  if (!is_blocked(bs, user, scene.buildings)) out.push_back(make_los_path(bs, user, scene));
  for (const auto& f : scene.facades) {
    const auto point = mirror_reflection_point(bs, user, f);
    if (!point || is_blocked(bs, *point, scene.buildings) || is_blocked(*point, user, scene.buildings)) {
      continue;
    }
    out.push_back(make_reflection_path(bs, user, *point, f.id, scene));
  }
  return out;
}

ChannelVector synthesize_channel(const PathSet& paths, int num_antennas) {
  ChannelVector h(static_cast<std::size_t>(num_antennas), Complex{});
  for (const auto& p : paths) {
    const double s = std::sin(p.aod_rad);
    for (int n = 0; n < num_antennas; ++n) {
      h[static_cast<std::size_t>(n)] += p.gain * std::polar(1.0, -std::numbers::pi * n * s);
    }
  }
  return h;
}

double nmse_ratio(const ChannelVector& h_true, const ChannelVector& h_pred) {
  if (h_true.size() != h_pred.size()) throw InvalidArgument("channel vectors differ in length");
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < h_true.size(); ++i) {
    err += std::norm(h_true[i] - h_pred[i]);
    ref += std::norm(h_true[i]);
  }
  if (!(ref > 0.0)) throw InvalidArgument("NMSE undefined for a zero reference channel");
  return err / ref;
}

double ratio_to_db(double ratio) {
  if (!(ratio > 0.0)) return kNmseFloorDb;
  return std::max(kNmseFloorDb, 10.0 * std::log10(ratio));
}

double nmse_db(const ChannelVector& h_true, const ChannelVector& h_pred) {
  return ratio_to_db(nmse_ratio(h_true, h_pred));
}

}  // namespace autocomm::channel
