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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "autocomm/channel/predictors.hpp"

namespace autocomm::channel {

struct Sample {
  Vec3 user;
  std::vector<bool> labels;  // per facade
  PathSet paths;
  ChannelVector h;
};

Sample make_sample(const Scene3D& scene, Vec3 user);

/// One sample per point; parallel over points.
std::vector<Sample> generate_dataset(const Scene3D& scene, const std::vector<Vec3>& points);
std::vector<Sample> generate_dataset_serial(const Scene3D& scene, const std::vector<Vec3>& points);

/// One row per sample: position, per-facade labels, then per path slot
/// (LoS, facade 0, facade 1, ...) present flag, aod, aoa, delay, re and im
/// of the gain. Absent slots leave their fields empty.
void write_dataset_csv(std::ostream& out, const Scene3D& scene, const std::vector<Sample>& samples);

/// Training grid over the evaluation extent, offset by half a spacing so no
/// training point coincides with an evaluation grid point of a coarser
/// multiple spacing.
std::vector<Vec3> training_points(const GridSpec& extent, double spacing_m);

struct PredictorSummary {
  std::string predictor;
  int samples = 0;
  int excluded = 0;           // zero reference channel (no path at all)
  double nmse_db = 0.0;       // mean error ratio over samples, in dB
  double worst_db = 0.0;
};

/// Trains the requested predictors on the training grid and scores them on
/// the evaluation grid.
std::vector<PredictorSummary> evaluate_predictors(const ChannelSceneConfig& cfg);

/// Dataset-mean NMSE (dB) of the geometry predictor with every reflection
/// point shifted by each of `shifts_m`.
std::vector<double> perturbation_sweep(const Scene3D& scene, const std::vector<Vec3>& points,
                                       const std::vector<double>& shifts_m);

/// Scene file: a JSON object with the fields of a `channel` config section.
ChannelSceneConfig load_scene_file(const std::filesystem::path& path);
void save_scene_file(const std::filesystem::path& path, const ChannelSceneConfig& cfg);

/// The four reference layouts with 1-4 buildings.
ChannelSceneConfig fixture_scene(int num_buildings);

}  // namespace autocomm::channel
