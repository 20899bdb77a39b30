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

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "autocomm/core/digest.hpp"
#include "autocomm/core/error.hpp"
#include "autocomm/radio/link.hpp"

namespace autocomm::radio {

void write_snr_csv(std::ostream& out, const SnrMap& snr) {
  out << "robot,rb,snr_linear\n";
  for (int i = 0; i < snr.num_robots(); ++i) {
    for (int b = 0; b < snr.num_rbs(); ++b) {
      out << (i + 1) << ',' << b << ',' << exact_double(snr.at(i, b)) << '\n';
    }
  }
}

SnrMap read_snr_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "robot,rb,snr_linear") {
    throw Error("snr csv: expected header 'robot,rb,snr_linear'");
  }
  std::map<std::pair<int, int>, double> entries;
  int max_robot = 0;
  int max_rb = -1;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw Error("snr csv line " + std::to_string(line_no) + ": expected 3 fields");
    }
    int robot = 0;
    int rb = 0;
    double value = 0.0;
    const char* s = line.data();
    const bool ok = std::from_chars(s, s + c1, robot).ec == std::errc{} &&
                    std::from_chars(s + c1 + 1, s + c2, rb).ec == std::errc{} &&
                    std::from_chars(s + c2 + 1, s + line.size(), value).ec == std::errc{};
    if (!ok || robot < 1 || rb < 0 || !(value > 0.0) || !std::isfinite(value)) {
      throw Error("snr csv line " + std::to_string(line_no) + ": invalid entry");
    }
    if (!entries.emplace(std::pair{robot, rb}, value).second) {
      throw Error("snr csv line " + std::to_string(line_no) + ": duplicate entry");
    }
    max_robot = std::max(max_robot, robot);
    max_rb = std::max(max_rb, rb);
  }
  if (entries.empty()) throw Error("snr csv: no entries");
  const auto expected = static_cast<std::size_t>(max_robot) * static_cast<std::size_t>(max_rb + 1);
  if (entries.size() != expected) throw Error("snr csv: matrix is incomplete");
  SnrMap map(max_robot, max_rb + 1);
  for (const auto& [key, value] : entries) map.at(key.first - 1, key.second) = value;
  return map;
}

}  // namespace autocomm::radio
