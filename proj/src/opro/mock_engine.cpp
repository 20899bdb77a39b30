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

#include "autocomm/opro/mock_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "autocomm/opro/prompt.hpp"

namespace autocomm::opro {

namespace {

std::vector<sched::RobotId> read_ids(std::string_view text) {
  std::vector<sched::RobotId> ids;
  std::istringstream in{std::string(text)};
  sched::RobotId id = 0;
  while (in >> id) ids.push_back(id);
  return ids;
}

}  // namespace

std::optional<MockLocalSearchEngine::PromptView> MockLocalSearchEngine::read_prompt(
    const std::string& prompt) {
  PromptView view;
  bool have_rbs = false;
  bool in_history = false;
  std::istringstream lines(prompt);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string_view l = line;
    if (l.starts_with(kRbCountPrefix)) {
      view.num_rbs = std::atoi(line.c_str() + kRbCountPrefix.size());
      have_rbs = view.num_rbs > 0;
    } else if (l.starts_with(kEligiblePrefix)) {
      view.eligible = read_ids(l.substr(kEligiblePrefix.size()));
    } else if (l.starts_with(kExplorePrefix)) {
      view.explore = std::clamp(std::atof(line.c_str() + kExplorePrefix.size()), 0.0, 1.0);
    } else if (l == kHistoryHeader) {
      in_history = true;
      continue;
    }
    if (in_history) {
      if (!l.starts_with("- ")) {
        in_history = false;
        continue;
      }
      const auto parsed = parse_allocation(l.substr(0, l.find(']') + 1));
      if (const auto* a = std::get_if<sched::Allocation>(&parsed)) view.exemplars.push_back(*a);
    }
  }
  if (!have_rbs || view.eligible.empty()) return std::nullopt;
  return view;
}

std::string MockLocalSearchEngine::propose(const std::string& prompt, RngStream& rng) {
  const auto view = read_prompt(prompt);
  if (!view) return "I cannot find the scheduling instance in this prompt.";
  const auto& ids = view->eligible;
  const auto n = static_cast<std::size_t>(view->num_rbs);

  sched::Allocation out;
  if (view->exemplars.empty()) {
    out.rb_owner.resize(n);
    for (auto& r : out.rb_owner) r = ids[rng.below(ids.size())];
  } else {
    out = view->exemplars.front();
    out.rb_owner.resize(n, ids.front());
    int changes = 0;
    if (view->explore > 0.0) {
      const int max_changes = std::max(
          1, static_cast<int>(std::lround(view->explore * params_.max_mutation_fraction *
                                          static_cast<double>(n))));
      changes = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_changes)));
    }
    // Distinct positions, each moved to a different eligible robot.
    std::vector<std::size_t> positions(n);
    for (std::size_t i = 0; i < n; ++i) positions[i] = i;
    for (int k = 0; k < changes && k < static_cast<int>(n); ++k) {
      const auto j = k + rng.below(n - static_cast<std::size_t>(k));
      std::swap(positions[static_cast<std::size_t>(k)], positions[j]);
      auto& slot = out.rb_owner[positions[static_cast<std::size_t>(k)]];
      const auto cur = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), slot) - ids.begin());
      if (cur == ids.size()) {
        slot = ids[rng.below(ids.size())];
      } else if (ids.size() > 1) {
        // Uniform over the other eligible robots.
        auto pick = rng.below(ids.size() - 1);
        if (pick >= cur) ++pick;
        slot = ids[pick];
      }
    }
  }
  return "Proposed allocation: " + out.to_string();
}

std::unique_ptr<ProposalEngine> mock_local_search_engine(MockEngineParams params) {
  return std::make_unique<MockLocalSearchEngine>(params);
}

}  // namespace autocomm::opro
