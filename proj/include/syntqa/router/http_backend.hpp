#pragma once

#include <string>

#include "syntqa/router/judge.hpp"

namespace syntqa {

/// Environment variable naming the judge endpoint, e.g.
/// "http://127.0.0.1:8080/judge".
inline constexpr const char* kLlmEndpointEnvVar = "SYNTQA_LLM_ENDPOINT";

struct HttpBackendConfig {
  std::string endpoint;     ///< empty = read from SYNTQA_LLM_ENDPOINT
  int timeout_seconds = 10;
  int max_retries = 2;      ///< additional attempts after the first
};

/// POSTs {"format","version","module","prompt"} and parses the first YES/NO
/// or A/B token of the reply (raw text or a JSON object with "reply").
/// Connection failures raise BackendUnavailable after bounded retries;
/// timeouts raise Timeout. Parse failures fall back per module and are
/// logged to stderr.
class HttpBackend : public JudgeBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  JudgeVerdict judge(const JudgeRequest& request) override;

  const std::string& endpoint() const { return endpoint_; }

 private:
  HttpBackendConfig config_;
  std::string endpoint_;
  std::string host_;  // scheme://host:port
  std::string path_;
};

}  // namespace syntqa
