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

#include "autocomm/channel/predictors.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace autocomm::channel {

ChannelVector geometry_predictor(const Scene3D& scene, Vec3 user, const GeometryOverrides& o) {
  const Vec3 bs = scene.bs;
  const auto labels = o.labels ? *o.labels : classify_scatterers(scene, bs, user);
  if (labels.size() != scene.facades.size()) {
    throw InvalidArgument("label override must have one entry per facade");
  }
  PathSet paths;
  if (!is_blocked(bs, user, scene.buildings)) paths.push_back(make_los_path(bs, user, scene));
  for (std::size_t i = 0; i < scene.facades.size(); ++i) {
    if (!labels[i]) continue;
    const auto& f = scene.facades[i];
    auto point = mirror_reflection_point(bs, user, f);
    if (!point) point = unbounded_reflection_point(bs, user, f);
    if (!point) continue;
    (*point)[f.u_axis()] += o.point_shift_m;
    paths.push_back(make_reflection_path(bs, user, *point, f.id, scene));
  }
  return synthesize_channel(paths, scene.num_antennas);
}

LinearGcpPredictor::LinearGcpPredictor(int num_facades, int num_antennas)
    : num_antennas_(num_antennas), slots_(static_cast<std::size_t>(num_facades + 1)) {}

namespace {

std::array<double, 3> solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(b);
  return {x(0), x(1), x(2)};
}

double apply(const std::array<double, 3>& c, Vec3 p) { return c[0] + c[1] * p.x + c[2] * p.y; }

}  // namespace

void LinearGcpPredictor::fit(const std::vector<TrainingSample>& training) {
  const auto n = static_cast<Eigen::Index>(training.size());
  if (n == 0) throw InvalidArgument("linear GCP fit needs at least one sample");
  Eigen::MatrixXd design(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = training[static_cast<std::size_t>(i)].user;
    design.row(i) << 1.0, u.x, u.y;
  }
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    Eigen::VectorXd present = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::Index> rows;
    std::vector<const Path*> hits;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (const auto& p : training[static_cast<std::size_t>(i)].paths) {
        if (static_cast<std::size_t>(slot_of(p)) != s) continue;
        present(i) = 1.0;
        rows.push_back(i);
        hits.push_back(&p);
        break;
      }
    }
    auto& slot = slots_[s];
    slot = Slot{};
    if (hits.empty()) continue;
    slot.fitted = true;
    slot.presence = solve(design, present);
    const auto m = static_cast<Eigen::Index>(hits.size());
    Eigen::MatrixXd sub(m, 3);
    Eigen::MatrixXd targets(m, 4);
    for (Eigen::Index k = 0; k < m; ++k) {
      sub.row(k) = design.row(rows[static_cast<std::size_t>(k)]);
      const Path& p = *hits[static_cast<std::size_t>(k)];
      targets.row(k) << p.aod_rad, p.delay_s, std::log(std::abs(p.gain)), std::arg(p.gain);
    }
    for (int c = 0; c < 4; ++c) slot.gcp[static_cast<std::size_t>(c)] = solve(sub, targets.col(c));
  }
}

PathSet LinearGcpPredictor::predict_paths(Vec3 user) const {
  PathSet out;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const auto& slot = slots_[s];
    if (!slot.fitted) continue;
    const double w = std::clamp(apply(slot.presence, user), 0.0, 1.0);
    if (w <= 0.0) continue;
    Path p;
    p.kind = s == 0 ? Path::Kind::LoS : Path::Kind::SingleReflection;
    p.facade = static_cast<int>(s) - 1;
    p.aod_rad = apply(slot.gcp[0], user);
    p.delay_s = apply(slot.gcp[1], user);
    p.length_m = p.delay_s * kSpeedOfLight;
    p.gain = w * std::polar(std::exp(apply(slot.gcp[2], user)), apply(slot.gcp[3], user));
    out.push_back(p);
  }
  return out;
}

ChannelVector LinearGcpPredictor::predict(Vec3 user) const {
  return synthesize_channel(predict_paths(user), num_antennas_);
}

void NnCkmPredictor::add(Vec3 position, ChannelVector h) {
  positions_.push_back(position);
  channels_.push_back(std::move(h));
}

std::size_t NnCkmPredictor::nearest_index(Vec3 user) const {
  if (positions_.empty()) throw InvalidArgument("nn-ckm predictor has no training points");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const Vec3 d = positions_[i] - user;
    const double d2 = dot(d, d);
    if (d2 < best_d) {
      best_d = d2;
      best = i;
    }
  }
  return best;
}

const ChannelVector& NnCkmPredictor::predict(Vec3 user) const { return channels_[nearest_index(user)]; }

}  // namespace autocomm::channel
