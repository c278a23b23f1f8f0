#pragma once

#include <filesystem>
#include <string>

#include "hgr/oracle/request.hpp"

namespace hgr::oracle {

enum class HttpProtocol {
  /// POST <path> with {kind, payload, schema_version}; reply {ok, result | error}.
  native,
  /// Chat-completion and embedding endpoints (/v1/chat/completions,
  /// /v1/embeddings); the kind's prompt template becomes the system message
  /// and the payload JSON the user message.
  chat_completions,
};

struct HttpBackendOptions {
  std::string base_url = "http://127.0.0.1:8080";
  std::string path = "/oracle";
  HttpProtocol protocol = HttpProtocol::native;
  std::string chat_model;
  std::string embedding_model;
  /// Name of the environment variable holding a bearer token, if any.
  std::string api_key_env;
  std::filesystem::path prompt_dir = "prompts";
  int timeout_seconds = 60;
};

class HttpBackend final : public OracleBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);

  std::string name() const override { return "http"; }
  BackendReply invoke(const OracleRequest& request) override;

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;
  BackendReply invoke_native(const OracleRequest& request) const;
  BackendReply invoke_chat(const OracleRequest& request) const;
  std::string prompt_for(OracleKind kind) const;

  HttpBackendOptions options_;
};

}  // namespace hgr::oracle
