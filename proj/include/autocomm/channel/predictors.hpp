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

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "autocomm/channel/paths.hpp"

namespace autocomm::channel {

/// Hooks for corrupting the two stages of the geometry predictor.
struct GeometryOverrides {
  /// Replaces the stage-1 scatterer labels. A facade forced on without a
  /// bounded reflection point uses the unbounded plane point when both
  /// endpoints face it and is skipped otherwise.
  std::optional<std::vector<bool>> labels;
  /// Stage-2 shift of each reflection point along the facade's horizontal
  /// axis, in meters.
  double point_shift_m = 0.0;
};

/// Stage 1 (classify scatterers), stage 2 (reflection points), then path
/// parameters and channel synthesis.
ChannelVector geometry_predictor(const Scene3D& scene, Vec3 user, const GeometryOverrides& o = {});

struct TrainingSample {
  Vec3 user;
  PathSet paths;
};

/// Per path slot (LoS, then one per facade) an affine least-squares map from
/// (x, y) to aod, delay, log|g| and phase, fitted on the samples where the
/// slot is present, plus an affine presence fraction fitted on all samples.
/// Absent slots count as zero gain; the predicted gain is scaled by the
/// presence fraction clamped to [0, 1].
class LinearGcpPredictor {
 public:
  LinearGcpPredictor(int num_facades, int num_antennas);

  void fit(const std::vector<TrainingSample>& training);
  PathSet predict_paths(Vec3 user) const;
  ChannelVector predict(Vec3 user) const;

  static int slot_of(const Path& p) { return p.kind == Path::Kind::LoS ? 0 : p.facade + 1; }

 private:
  struct Slot {
    bool fitted = false;
    std::array<double, 3> presence{};  // coefficients of [1, x, y]
    std::array<std::array<double, 3>, 4> gcp{};  // aod, delay, log|g|, phase
  };
  int num_antennas_;
  std::vector<Slot> slots_;
};

class NnCkmPredictor {
 public:
  void add(Vec3 position, ChannelVector h);
  /// Nearest stored position by Euclidean distance; the lower index wins ties.
  const ChannelVector& predict(Vec3 user) const;
  std::size_t nearest_index(Vec3 user) const;
  std::size_t size() const { return positions_.size(); }

 private:
  std::vector<Vec3> positions_;
  std::vector<ChannelVector> channels_;
};

}  // namespace autocomm::channel
