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

// Must match the library's httplib configuration.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

#include "autocomm/llm/chat_client.hpp"
#include "autocomm/opro/loop.hpp"
#include "support/instances.hpp"

namespace autocomm::llm {
namespace {

namespace fs = std::filesystem;

constexpr const char* kSecret = "sk-test-5f1c0ffee0ddba11";

fs::path temp_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("autocomm_llm_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// In-memory client that answers with a fixed script.
class ScriptedClient final : public ChatClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const std::vector<ChatMessage>&) override {
    return replies_.at(calls_++ % replies_.size());
  }
  std::size_t calls() const { return calls_; }

 private:
  std::vector<std::string> replies_;
  std::size_t calls_ = 0;
};

// Chat-completions stub on 127.0.0.1 with a configurable handler.
class StubServer {
 public:
  explicit StubServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

EndpointConfig stub_endpoint(const StubServer& s) {
  EndpointConfig cfg;
  cfg.base_url = s.base_url();
  cfg.api_key = kSecret;
  cfg.max_retries = 0;
  cfg.timeout_s = 5.0;
  return cfg;
}

const std::vector<ChatMessage> kHello{{"system", "s"}, {"user", "hello"}};

// -------------------------------------------------------------- cassettes

TEST(Replay, ReturnsRecordedTextVerbatim) {
  ReplayChatClient client({{messages_digest(kHello), "  [1 2 3]\n", 1.0}});
  EXPECT_EQ(client.complete(kHello), "  [1 2 3]\n");
  EXPECT_EQ(client.remaining(), 0u);
}

TEST(Replay, DigestMismatchAndExhaustion) {
  ReplayChatClient client({{messages_digest(kHello), "x", 0.0}});
  EXPECT_THROW(client.complete({{"user", "other"}}), CassetteMismatch);
  EXPECT_EQ(client.complete(kHello), "x");
  EXPECT_THROW(client.complete(kHello), CassetteMismatch);
}

TEST(Replay, MissingOrCorruptCassette) {
  const auto dir = temp_dir("corrupt");
  EXPECT_THROW(ReplayChatClient(dir / "absent.jsonl"), CassetteIoError);
  std::ofstream(dir / "bad.jsonl") << "{not json\n";
  EXPECT_THROW(ReplayChatClient(dir / "bad.jsonl"), CassetteIoError);
}

TEST(Record, IdenticalCallsProduceTwoRecords) {
  const auto dir = temp_dir("record");
  const auto path = dir / "c.jsonl";
  auto inner = std::make_shared<ScriptedClient>(std::vector<std::string>{"a", "b"});
  RecordingChatClient rec(inner, path);
  EXPECT_EQ(rec.complete(kHello), "a");
  EXPECT_EQ(rec.complete(kHello), "b");
  const auto records = read_cassette(path);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].request_digest, records[1].request_digest);
  EXPECT_EQ(records[0].response_text, "a");
  EXPECT_EQ(records[1].response_text, "b");
}

TEST(Record, RecordThenReplayReproducesOproTranscript) {
  const auto dir = temp_dir("roundtrip");
  const auto path = dir / "opro.jsonl";
  const auto in = testing::brute_forceable_instance(3);
  OproParams params;
  params.max_iterations = 12;

  auto scripted = std::make_shared<ScriptedClient>(
      std::vector<std::string>{"[1 2 3 4 1 2 3 4 1]", "[1 1 2 2 3 3 4 4 1]", "nothing", "[4 4 4 4 4 4 4 4 4]"});
  ChatEngine live(std::make_shared<RecordingChatClient>(scripted, path));
  auto rng1 = stream(1, "opro");
  opro::OproTranscript t1;
  opro::opro_optimize(live, in.cfg, in.snr, in.objective, params, rng1, t1);

  ChatEngine replay(std::make_shared<ReplayChatClient>(path));
  auto rng2 = stream(1, "opro");
  opro::OproTranscript t2;
  const auto r2 = opro::opro_optimize(replay, in.cfg, in.snr, in.objective, params, rng2, t2);
  EXPECT_FALSE(r2.aborted);
  EXPECT_EQ(t1.to_jsonl(), t2.to_jsonl());
}

TEST(ChatEngineTest, CassetteMismatchBecomesEngineError) {
  ChatEngine engine(std::make_shared<ReplayChatClient>(std::vector<CassetteRecord>{}));
  auto rng = stream(1, "x");
  EXPECT_THROW(engine.propose("p", rng), opro::EngineError);
}

// ---------------------------------------------------------------- secrecy

TEST(Secrecy, PublicJsonOmitsKey) {
  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:1/v1";
  cfg.api_key = kSecret;
  const auto text = cfg.public_json().dump();
  EXPECT_EQ(text.find(kSecret), std::string::npos);
  EXPECT_FALSE(cfg.public_json().contains("api_key"));
}

TEST(Secrecy, KeyNeverReachesCassetteOrTranscript) {
  std::string auth_seen;
  StubServer server([&auth_seen](const httplib::Request& req, httplib::Response& res) {
    auth_seen = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"[1 2 1 2 1 2 1 2 1]"}}]})",
                    "application/json");
  });
  const auto dir = temp_dir("secrecy");
  const auto cassette = dir / "c.jsonl";
  auto http = std::make_shared<HttpChatClient>(stub_endpoint(server));
  ChatEngine engine(std::make_shared<RecordingChatClient>(http, cassette));
  const auto in = testing::brute_forceable_instance(0);
  OproParams params;
  params.max_iterations = 3;
  auto rng = stream(1, "opro");
  opro::OproTranscript tr;
  const auto r = opro::opro_optimize(engine, in.cfg, in.snr, in.objective, params, rng, tr);
  EXPECT_FALSE(r.aborted) << r.error;
  EXPECT_EQ(auth_seen, std::string("Bearer ") + kSecret);  // the key is used on the wire only
  EXPECT_EQ(slurp(cassette).find(kSecret), std::string::npos);
  EXPECT_EQ(tr.to_jsonl().find(kSecret), std::string::npos);
}

// ----------------------------------------------------------- HTTP client

TEST(Http, ReturnsAssistantText) {
  StubServer server([](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    const std::string echo = body.at("messages").at(1).at("content");
    nlohmann::json reply{{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo:" + echo}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  HttpChatClient client(stub_endpoint(server));
  EXPECT_EQ(client.complete(kHello), "echo:hello");
}

TEST(Http, ErrorStatusSurfacesWithExcerpt) {
  StubServer server([](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_content("rate limited, slow down", "text/plain");
  });
  HttpChatClient client(stub_endpoint(server));
  try {
    client.complete(kHello);
    FAIL() << "expected HttpStatusError";
  } catch (const HttpStatusError& e) {
    EXPECT_EQ(e.status(), 429);
    EXPECT_EQ(e.body_excerpt(), "rate limited, slow down");
    EXPECT_EQ(std::string(e.what()).find(kSecret), std::string::npos);
  }
}

TEST(Http, MalformedJsonIsReported) {
  StubServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"choices": []})", "application/json");
  });
  HttpChatClient client(stub_endpoint(server));
  EXPECT_THROW(client.complete(kHello), MalformedResponse);
}

TEST(Http, UnreachableEndpointIsTransportError) {
  int port = 0;
  {
    httplib::Server probe;  // grab a free loopback port, then release it
    port = probe.bind_to_any_port("127.0.0.1");
  }
  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  cfg.max_retries = 1;
  cfg.backoff_initial_s = 0.01;
  cfg.timeout_s = 1.0;
  HttpChatClient client(cfg);
  EXPECT_THROW(client.complete(kHello), TransportError);
}

TEST(Endpoint, ValidationAndEnvironment) {
  EndpointConfig cfg;
  cfg.base_url = "localhost:8080";
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.base_url = "http://x/v1";
  cfg.timeout_s = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  // ctest clears both variables, so from_env leaves the base untouched.
  EndpointConfig base;
  base.base_url = "http://keep/v1";
  EXPECT_EQ(EndpointConfig::from_env(base).base_url, "http://keep/v1");
}

TEST(Factory, SpecsAndErrors) {
  const auto dir = temp_dir("factory");
  std::ofstream(dir / "c.jsonl") << CassetteRecord{messages_digest(kHello), "ok", 0}.to_json().dump() << "\n";
  auto client = make_chat_client("replay:" + (dir / "c.jsonl").string());
  EXPECT_EQ(client->complete(kHello), "ok");
  EXPECT_THROW(make_chat_client("gpt"), InvalidArgument);
}

TEST(Digest, DependsOnRoleAndContent) {
  EXPECT_EQ(messages_digest(kHello), messages_digest(kHello));
  EXPECT_NE(messages_digest({{"user", "a"}}), messages_digest({{"system", "a"}}));
  EXPECT_NE(messages_digest({{"user", "a"}}), messages_digest({{"user", "b"}}));
  EXPECT_EQ(messages_digest(kHello).size(), 64u);
}

}  // namespace
}  // namespace autocomm::llm
