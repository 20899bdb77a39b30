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

#include <chrono>
#include <fstream>

#include "autocomm/llm/chat_client.hpp"

namespace autocomm::llm {

using nlohmann::json;

json CassetteRecord::to_json() const {
  return {{"request_digest", request_digest},
          {"response_text", response_text},
          {"latency_ms", latency_ms}};
}

CassetteRecord CassetteRecord::from_json(const json& j) {
  CassetteRecord r;
  r.request_digest = j.at("request_digest").get<std::string>();
  r.response_text = j.at("response_text").get<std::string>();
  r.latency_ms = j.value("latency_ms", 0.0);
  return r;
}

std::vector<CassetteRecord> read_cassette(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CassetteIoError("cannot open cassette " + path.string());
  std::vector<CassetteRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(CassetteRecord::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw CassetteIoError("cassette " + path.string() + " line " + std::to_string(lineno) + ": " +
                            e.what());
    }
  }
  return out;
}

RecordingChatClient::RecordingChatClient(std::shared_ptr<ChatClient> inner,
                                         std::filesystem::path cassette)
    : inner_(std::move(inner)), path_(std::move(cassette)) {}

std::string RecordingChatClient::complete(const std::vector<ChatMessage>& messages) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string text = inner_->complete(messages);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const CassetteRecord rec{messages_digest(messages), text, ms};
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << rec.to_json().dump() << '\n';
  out.flush();
  if (!out) throw CassetteIoError("cannot append to cassette " + path_.string());
  return text;
}

ReplayChatClient::ReplayChatClient(std::vector<CassetteRecord> records)
    : records_(std::move(records)) {}

ReplayChatClient::ReplayChatClient(const std::filesystem::path& cassette)
    : records_(read_cassette(cassette)) {}

std::string ReplayChatClient::complete(const std::vector<ChatMessage>& messages) {
  std::lock_guard lock(mu_);
  if (next_ >= records_.size()) {
    throw CassetteMismatch("cassette exhausted after " + std::to_string(records_.size()) +
                           " records");
  }
  const auto digest = messages_digest(messages);
  const auto& rec = records_[next_];
  if (rec.request_digest != digest) {
    throw CassetteMismatch("cassette record " + std::to_string(next_) + " expects request " +
                           rec.request_digest + " but got " + digest);
  }
  ++next_;
  return rec.response_text;
}

std::size_t ReplayChatClient::remaining() const {
  std::lock_guard lock(mu_);
  return records_.size() - next_;
}

}  // namespace autocomm::llm
