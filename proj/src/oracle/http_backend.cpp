#include "hgr/oracle/http_backend.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "hgr/errors.hpp"

namespace hgr::oracle {

using nlohmann::json;

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw OracleError("http oracle backend needs a base URL");
}

json HttpBackend::post(const std::string& path, const json& body) const {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!options_.api_key_env.empty())
    if (const char* key = std::getenv(options_.api_key_env.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res)
    throw BackendUnreachableError("oracle endpoint " + options_.base_url + path +
                                  " unreachable: " + httplib::to_string(res.error()));
  if (res->status >= 500 || res->status == 429)
    throw TransientOracleError("oracle endpoint returned HTTP " + std::to_string(res->status));
  if (res->status >= 400)
    throw OracleError("oracle endpoint returned HTTP " + std::to_string(res->status) + ": " +
                      res->body.substr(0, 300));
  try {
    return json::parse(res->body);
  } catch (const json::exception& ex) {
    throw SchemaViolationError(std::string("oracle endpoint sent invalid JSON: ") + ex.what());
  }
}

BackendReply HttpBackend::invoke(const OracleRequest& request) {
  return options_.protocol == HttpProtocol::native ? invoke_native(request) : invoke_chat(request);
}

BackendReply HttpBackend::invoke_native(const OracleRequest& request) const {
  json body = {{"kind", to_string(request.kind)}, {"payload", request.payload}, {"schema_version", kSchemaVersion}};
  json reply = post(options_.path, body);
  if (!reply.is_object() || !reply.contains("ok") || !reply["ok"].is_boolean())
    throw SchemaViolationError("oracle reply lacks a boolean 'ok'");
  if (!reply["ok"].get<bool>())
    throw OracleError("oracle reported an error: " + reply.value("error", std::string("(no message)")));
  if (!reply.contains("result")) throw SchemaViolationError("oracle reply lacks 'result'");
  BackendReply out{reply["result"], std::nullopt};
  if (reply.contains("usage") && reply["usage"].is_object())
    out.usage = TokenCounts{reply["usage"].value("input_tokens", std::int64_t{0}),
                            reply["usage"].value("output_tokens", std::int64_t{0})};
  return out;
}

std::string HttpBackend::prompt_for(OracleKind kind) const {
  std::ifstream in(options_.prompt_dir / (std::string(to_string(kind)) + ".txt"));
  if (!in) throw OracleError(std::string("missing prompt template for ") + to_string(kind) + " in " +
                             options_.prompt_dir.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BackendReply HttpBackend::invoke_chat(const OracleRequest& request) const {
  if (request.kind == OracleKind::Embed) {
    json reply = post("/v1/embeddings", {{"model", options_.embedding_model}, {"input", request.payload.at("text")}});
    try {
      BackendReply out{{{"vector", reply.at("data").at(0).at("embedding")}}, std::nullopt};
      if (reply.contains("usage")) out.usage = TokenCounts{reply["usage"].value("prompt_tokens", std::int64_t{0}), 0};
      return out;
    } catch (const json::exception& ex) {
      throw SchemaViolationError(std::string("unexpected embeddings reply: ") + ex.what());
    }
  }
  json body = {{"model", options_.chat_model},
               {"temperature", 0},
               {"response_format", {{"type", "json_object"}}},
               {"messages", json::array({{{"role", "system"}, {"content", prompt_for(request.kind)}},
                                         {{"role", "user"}, {"content", request.payload.dump()}}})}};
  json reply = post("/v1/chat/completions", body);
  try {
    std::string content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    json result = json::parse(content, nullptr, false);
    if (result.is_discarded()) result = {{"unparseable", content}};
    BackendReply out{std::move(result), std::nullopt};
    if (reply.contains("usage"))
      out.usage = TokenCounts{reply["usage"].value("prompt_tokens", std::int64_t{0}),
                              reply["usage"].value("completion_tokens", std::int64_t{0})};
    return out;
  } catch (const json::exception& ex) {
    throw SchemaViolationError(std::string("unexpected chat completion reply: ") + ex.what());
  }
}

}  // namespace hgr::oracle
