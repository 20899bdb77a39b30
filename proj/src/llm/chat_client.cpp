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

#include "autocomm/llm/chat_client.hpp"

#include <cstdlib>

#include "autocomm/core/digest.hpp"

namespace autocomm::llm {

using nlohmann::json;

HttpStatusError::HttpStatusError(int status, std::string body_excerpt)
    : ChatError("chat endpoint returned HTTP " + std::to_string(status) + ": " + body_excerpt),
      status_(status),
      excerpt_(std::move(body_excerpt)) {}

EndpointConfig EndpointConfig::from_env(EndpointConfig base) {
  if (const char* url = std::getenv(kBaseUrlEnv); url && *url) base.base_url = url;
  if (const char* key = std::getenv(kApiKeyEnv); key && *key) base.api_key = key;
  return base;
}

void EndpointConfig::validate() const {
  if (base_url.find("://") == std::string::npos) {
    throw InvalidArgument("endpoint base_url must include a scheme, got '" + base_url + "'");
  }
  if (!(timeout_s > 0)) throw InvalidArgument("endpoint timeout_s must be positive");
  if (max_retries < 0) throw InvalidArgument("endpoint max_retries must be non-negative");
  if (!(temperature >= 0)) throw InvalidArgument("endpoint temperature must be non-negative");
}

json EndpointConfig::public_json() const {
  return {{"base_url", base_url},
          {"model_name", model_name},
          {"timeout_s", timeout_s},
          {"max_retries", max_retries},
          {"temperature", temperature}};
}

std::string messages_digest(const std::vector<ChatMessage>& messages) {
  json arr = json::array();
  for (const auto& m : messages) arr.push_back({{"role", m.role}, {"content", m.content}});
  return sha256_hex(arr.dump());
}

ChatEngine::ChatEngine(std::shared_ptr<ChatClient> client, std::string system_prompt)
    : client_(std::move(client)), system_(std::move(system_prompt)) {
  if (system_.empty()) {
    system_ = "You are a wireless network controller. Follow the output format exactly.";
  }
}

std::string ChatEngine::propose(const std::string& prompt, RngStream& /*rng*/) {
  try {
    return client_->complete({{"system", system_}, {"user", prompt}});
  } catch (const ChatError& e) {
    throw opro::EngineError(e.what());
  }
}

std::shared_ptr<ChatClient> make_chat_client(const std::string& spec, EndpointConfig endpoint) {
  if (spec.starts_with("replay:")) return std::make_shared<ReplayChatClient>(spec.substr(7));
  if (spec == "chat") return std::make_shared<HttpChatClient>(EndpointConfig::from_env(endpoint));
  if (spec.starts_with("record:")) {
    auto live = std::make_shared<HttpChatClient>(EndpointConfig::from_env(endpoint));
    return std::make_shared<RecordingChatClient>(live, spec.substr(7));
  }
  throw InvalidArgument("unknown chat engine '" + spec + "' (expected chat, record:<path> or replay:<path>)");
}

std::shared_ptr<ChatClient> make_chat_client(const std::string& spec) {
  return make_chat_client(spec, EndpointConfig{});
}

}  // namespace autocomm::llm
