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

#include <functional>
#include <string>

#include "autocomm/core/error.hpp"
#include "autocomm/core/rng.hpp"

namespace autocomm::opro {

/// Raised by an engine that could not produce a reply (timeout, transport
/// failure after retries, replay mismatch). Loops abort on it.
class EngineError : public Error {
 public:
  using Error::Error;
};

/// Text-in, text-out decision maker. Implementations may keep state across
/// calls; callers never reset them between tasks.
class ProposalEngine {
 public:
  virtual ~ProposalEngine() = default;
  virtual std::string propose(const std::string& prompt, RngStream& rng) = 0;
  virtual std::string name() const = 0;
};

/// Adapts a callable; handy in tests and for scripted engines.
class FunctionEngine final : public ProposalEngine {
 public:
  using Fn = std::function<std::string(const std::string&, RngStream&)>;
  FunctionEngine(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string propose(const std::string& prompt, RngStream& rng) override { return fn_(prompt, rng); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

}  // namespace autocomm::opro
