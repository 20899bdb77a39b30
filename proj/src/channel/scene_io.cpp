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

#include <fstream>
#include <sstream>

#include "autocomm/channel/dataset.hpp"

namespace autocomm::channel {

using nlohmann::json;

ChannelSceneConfig load_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scene", "cannot open scene file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("scene", path.string() + ": " + e.what());
  }
  return channel_config_from_json(doc);
}

void save_scene_file(const std::filesystem::path& path, const ChannelSceneConfig& cfg) {
  ScenarioConfig wrapper;
  wrapper.track = Track::Channel;
  wrapper.channel = cfg;
  const json j = to_json(wrapper).at("channel");
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("cannot write scene file " + path.string());
}

ChannelSceneConfig fixture_scene(int num_buildings) {
  if (num_buildings < 1 || num_buildings > 4) {
    throw InvalidArgument("fixture scenes have 1-4 buildings");
  }
  // Road along x for |y| < 4 (four 2 m lanes), 6 m deep blocks on both sides,
  // BS mast behind the south row in the gap between its two blocks. Block
  // edges and the mast avoid every grid coordinate so no endpoint ever lies
  // on a facade plane.
  static const Building layout[4] = {
      {-20.0, -0.3, 4.0, 10.0, 15.0},
      {4.3, 20.0, 4.0, 10.0, 12.0},
      {-20.0, -6.3, -10.0, -4.0, 10.0},
      {6.3, 20.0, -10.0, -4.0, 14.0},
  };
  ChannelSceneConfig c;
  c.buildings.assign(layout, layout + num_buildings);
  c.bs_pos = {2.1, -12.0, 10.0};
  return c;
}

}  // namespace autocomm::channel
