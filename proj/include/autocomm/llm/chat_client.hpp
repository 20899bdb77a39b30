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
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "autocomm/core/error.hpp"
#include "autocomm/opro/engine.hpp"

namespace autocomm::llm {

inline constexpr const char* kApiKeyEnv = "AUTOCOMM_API_KEY";
inline constexpr const char* kBaseUrlEnv = "AUTOCOMM_BASE_URL";

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

class ChatError : public Error {
 public:
  using Error::Error;
};

class TransportError : public ChatError {
 public:
  using ChatError::ChatError;
};

class HttpStatusError : public ChatError {
 public:
  HttpStatusError(int status, std::string body_excerpt);
  int status() const { return status_; }
  const std::string& body_excerpt() const { return excerpt_; }

 private:
  int status_;
  std::string excerpt_;
};

class MalformedResponse : public ChatError {
 public:
  using ChatError::ChatError;
};

class CassetteMismatch : public ChatError {
 public:
  using ChatError::ChatError;
};

class CassetteIoError : public ChatError {
 public:
  using ChatError::ChatError;
};

struct EndpointConfig {
  std::string base_url;  // e.g. http://127.0.0.1:8080/v1
  std::string model_name = "default";
  std::string api_key;   // never serialized
  double timeout_s = 60.0;
  int max_retries = 3;
  double temperature = 0.7;
  double backoff_initial_s = 0.5;

  /// Fills base_url and api_key from the environment when set.
  static EndpointConfig from_env(EndpointConfig base);
  void validate() const;
  /// Everything except the api key.
  nlohmann::json public_json() const;
};

/// SHA-256 of the canonical JSON array of {role, content} objects.
std::string messages_digest(const std::vector<ChatMessage>& messages);

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  /// Assistant text of the first choice.
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// Live client for POST {base_url}/chat/completions.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig cfg);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  EndpointConfig cfg_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

struct CassetteRecord {
  std::string request_digest;
  std::string response_text;
  double latency_ms = 0.0;

  nlohmann::json to_json() const;
  static CassetteRecord from_json(const nlohmann::json& j);
  friend bool operator==(const CassetteRecord&, const CassetteRecord&) = default;
};

std::vector<CassetteRecord> read_cassette(const std::filesystem::path& path);

/// Forwards every call and appends one JSON line per call to the cassette,
/// flushing after each record.
class RecordingChatClient final : public ChatClient {
 public:
  RecordingChatClient(std::shared_ptr<ChatClient> inner, std::filesystem::path cassette);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  std::shared_ptr<ChatClient> inner_;
  std::filesystem::path path_;
  std::mutex mu_;
};

/// Answers from a cassette in order. A digest mismatch or an exhausted
/// cassette raises CassetteMismatch; it never falls through to the network.
class ReplayChatClient final : public ChatClient {
 public:
  explicit ReplayChatClient(std::vector<CassetteRecord> records);
  explicit ReplayChatClient(const std::filesystem::path& cassette);
  std::string complete(const std::vector<ChatMessage>& messages) override;

  std::size_t remaining() const;

 private:
  std::vector<CassetteRecord> records_;
  std::size_t next_ = 0;
  mutable std::mutex mu_;
};

/// ProposalEngine over a chat client: one system message plus the prompt as
/// the user message. Chat errors become opro::EngineError.
class ChatEngine final : public opro::ProposalEngine {
 public:
  explicit ChatEngine(std::shared_ptr<ChatClient> client, std::string system_prompt = {});
  std::string propose(const std::string& prompt, RngStream& rng) override;
  std::string name() const override { return "chat"; }

 private:
  std::shared_ptr<ChatClient> client_;
  std::string system_;
};

/// "chat" (live, endpoint from the environment), "record:<path>" (live and
/// recorded) or "replay:<path>".
std::shared_ptr<ChatClient> make_chat_client(const std::string& spec, EndpointConfig endpoint);
std::shared_ptr<ChatClient> make_chat_client(const std::string& spec);

}  // namespace autocomm::llm
