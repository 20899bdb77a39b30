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

#include "autocomm/channel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "autocomm/core/digest.hpp"

namespace autocomm::channel {

Sample make_sample(const Scene3D& scene, Vec3 user) {
  Sample s;
  s.user = user;
  s.labels = classify_scatterers(scene, scene.bs, user);
  s.paths = trace_paths(scene, user);
  s.h = synthesize_channel(s.paths, scene.num_antennas);
  return s;
}

std::vector<Sample> generate_dataset(const Scene3D& scene, const std::vector<Vec3>& points) {
  std::vector<Sample> out(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = make_sample(scene, points[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<Sample> generate_dataset_serial(const Scene3D& scene, const std::vector<Vec3>& points) {
  std::vector<Sample> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(make_sample(scene, p));
  return out;
}

void write_dataset_csv(std::ostream& out, const Scene3D& scene, const std::vector<Sample>& samples) {
  const std::size_t nf = scene.facades.size();
  out << "x,y";
  for (std::size_t f = 0; f < nf; ++f) out << ",label_f" << f;
  auto slot_header = [&](const std::string& name) {
    out << ',' << name << "_present," << name << "_aod_rad," << name << "_aoa_rad," << name
        << "_delay_s," << name << "_gain_re," << name << "_gain_im";
  };
  slot_header("los");
  for (std::size_t f = 0; f < nf; ++f) slot_header("f" + std::to_string(f));
  out << '\n';
  for (const auto& s : samples) {
    out << exact_double(s.user.x) << ',' << exact_double(s.user.y);
    for (const bool l : s.labels) out << ',' << (l ? 1 : 0);
    std::vector<const Path*> slots(nf + 1, nullptr);
    for (const auto& p : s.paths) {
      slots[p.kind == Path::Kind::LoS ? 0 : static_cast<std::size_t>(p.facade) + 1] = &p;
    }
    for (const auto* p : slots) {
      if (!p) {
        out << ",0,,,,,";
        continue;
      }
      out << ",1," << exact_double(p->aod_rad) << ',' << exact_double(p->aoa_rad) << ','
          << exact_double(p->delay_s) << ',' << exact_double(p->gain.real()) << ','
          << exact_double(p->gain.imag());
    }
    out << '\n';
  }
}

std::vector<Vec3> training_points(const GridSpec& extent, double spacing_m) {
  GridSpec g = extent;
  g.x_min += spacing_m / 2;
  g.y_min += spacing_m / 2;
  g.spacing_m = spacing_m;
  return g.points();
}

std::vector<PredictorSummary> evaluate_predictors(const ChannelSceneConfig& cfg) {
  const Scene3D scene = make_scene(cfg);
  const auto eval = generate_dataset(scene, cfg.grid.points());

  std::vector<Sample> train;
  const bool need_training = std::any_of(cfg.predictors.begin(), cfg.predictors.end(),
                                         [](const std::string& p) { return p != "geom"; });
  if (need_training) train = generate_dataset(scene, training_points(cfg.grid, cfg.training_spacing_m));

  std::vector<PredictorSummary> out;
  for (const auto& name : cfg.predictors) {
    std::function<ChannelVector(Vec3)> predict;
    LinearGcpPredictor linear(static_cast<int>(scene.facades.size()), scene.num_antennas);
    NnCkmPredictor nn;
    if (name == "geom") {
      predict = [&](Vec3 u) { return geometry_predictor(scene, u); };
    } else if (name == "linear") {
      std::vector<TrainingSample> ts;
      for (const auto& s : train) ts.push_back({s.user, s.paths});
      linear.fit(ts);
      predict = [&](Vec3 u) { return linear.predict(u); };
    } else if (name == "nn") {
      for (const auto& s : train) nn.add(s.user, s.h);
      predict = [&](Vec3 u) { return nn.predict(u); };
    } else {
      throw InvalidArgument("unknown predictor '" + name + "'");
    }
    PredictorSummary sum;
    sum.predictor = name;
    double ratio_sum = 0.0;
    double worst = 0.0;
    for (const auto& s : eval) {
      const bool silent = std::all_of(s.h.begin(), s.h.end(), [](Complex c) { return c == Complex{}; });
      if (silent) {
        ++sum.excluded;
        continue;
      }
      const double r = nmse_ratio(s.h, predict(s.user));
      ratio_sum += r;
      worst = std::max(worst, r);
      ++sum.samples;
    }
    sum.nmse_db = sum.samples > 0 ? ratio_to_db(ratio_sum / sum.samples) : kNmseFloorDb;
    sum.worst_db = ratio_to_db(worst);
    out.push_back(sum);
  }
  return out;
}

std::vector<double> perturbation_sweep(const Scene3D& scene, const std::vector<Vec3>& points,
                                       const std::vector<double>& shifts_m) {
  const auto truth = generate_dataset(scene, points);
  std::vector<double> out;
  for (const double shift : shifts_m) {
    GeometryOverrides o;
    o.point_shift_m = shift;
    double sum = 0.0;
    int n = 0;
    for (const auto& s : truth) {
      if (std::all_of(s.h.begin(), s.h.end(), [](Complex c) { return c == Complex{}; })) continue;
      sum += nmse_ratio(s.h, geometry_predictor(scene, s.user, o));
      ++n;
    }
    out.push_back(n > 0 ? ratio_to_db(sum / n) : kNmseFloorDb);
  }
  return out;
}

}  // namespace autocomm::channel
