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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autocomm/opro/engine.hpp"
#include "autocomm/sched/allocation.hpp"

namespace autocomm::opro {

struct MockEngineParams {
  // At exploration level 1 this fraction of the RBs is reassigned.
  double max_mutation_fraction = 0.5;
};

/// Offline stand-in for a language model. It reads only the prompt text: the
/// RB count, the eligible ids, the exemplar list and the exploration level.
/// With exemplars it perturbs the best one, reassigning between 1 and a
/// maximum number of RBs that scales with the exploration level (none at
/// level 0); without
/// exemplars it answers a uniform random vector over the eligible ids.
class MockLocalSearchEngine final : public ProposalEngine {
 public:
  explicit MockLocalSearchEngine(MockEngineParams params = {}) : params_(params) {}

  std::string propose(const std::string& prompt, RngStream& rng) override;
  std::string name() const override { return "mock"; }

  /// Prompt fields the engine understands; exposed for tests.
  struct PromptView {
    int num_rbs = 0;
    std::vector<sched::RobotId> eligible;
    std::vector<sched::Allocation> exemplars;
    double explore = 0.0;
  };
  static std::optional<PromptView> read_prompt(const std::string& prompt);

 private:
  MockEngineParams params_;
};

std::unique_ptr<ProposalEngine> mock_local_search_engine(MockEngineParams params = {});

}  // namespace autocomm::opro
