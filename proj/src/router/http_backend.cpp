#include "syntqa/router/http_backend.hpp"

#include <cstdlib>
#include <iostream>

#include <httplib.h>
#include <json.hpp>

#include "syntqa/errors.hpp"

namespace syntqa {

namespace {

constexpr int kJudgeRequestVersion = 1;

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  endpoint_ = config_.endpoint;
  if (endpoint_.empty()) {
    const char* env = std::getenv(kLlmEndpointEnvVar);
    if (!env || !*env) {
      throw Error(ErrorKind::BackendUnavailable,
                  std::string("no endpoint configured; set ") + kLlmEndpointEnvVar);
    }
    endpoint_ = env;
  }
  // split scheme://host:port from the path
  std::size_t scheme = endpoint_.find("://");
  std::size_t path_start =
      endpoint_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    host_ = endpoint_;
    path_ = "/";
  } else {
    host_ = endpoint_.substr(0, path_start);
    path_ = endpoint_.substr(path_start);
  }
}

JudgeVerdict HttpBackend::judge(const JudgeRequest& request) {
  nlohmann::ordered_json body;
  body["format"] = "syntqa-judge-request";
  body["version"] = kJudgeRequestVersion;
  body["module"] = std::string(judge_module_name(request.module));
  body["prompt"] = request.prompt;

  bool timed_out = false;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_write_timeout(config_.timeout_seconds, 0);

    auto result = client.Post(path_, body.dump(), "application/json");
    if (!result) {
      timed_out = result.error() == httplib::Error::Read ||
                  result.error() == httplib::Error::ConnectionTimeout;
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      last_error = "http status " + std::to_string(result->status);
      continue;
    }
    std::string reply = result->body;
    auto parsed = nlohmann::json::parse(reply, nullptr, false);
    if (parsed.is_object() && parsed.contains("reply") && parsed["reply"].is_string()) {
      reply = parsed["reply"].get<std::string>();
    }
    auto [verdict, ok] = parse_backend_reply(request.module, reply);
    if (!ok) {
      std::cerr << "syntqa: unparseable judge reply for "
                << judge_module_name(request.module) << "; falling back to "
                << verdict_name(verdict) << "\n";
    }
    return {request.module, verdict, std::move(reply)};
  }
  if (timed_out) {
    throw Error(ErrorKind::Timeout, "judge endpoint timed out: " + last_error);
  }
  throw Error(ErrorKind::BackendUnavailable,
              "judge endpoint unreachable after " + std::to_string(config_.max_retries + 1) +
                  " attempts: " + last_error);
}

}  // namespace syntqa
