#include "hgr/oracle/gateway.hpp"

#include <algorithm>
#include <thread>

#include <spdlog/spdlog.h>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"
#include "hgr/oracle/schema.hpp"
#include "hgr/text_util.hpp"

namespace hgr::oracle {

using nlohmann::json;

std::int64_t json_token_count(const json& value) {
  switch (value.type()) {
    case json::value_t::string:
      return static_cast<std::int64_t>(count_tokens(value.get_ref<const std::string&>()));
    case json::value_t::array:
    case json::value_t::object: {
      std::int64_t n = 0;
      for (const auto& x : value) n += json_token_count(x);
      return n;
    }
    default:
      return 0;
  }
}

json usage_report_to_json(const UsageReport& report) {
  json out = json::object();
  for (const auto& [tag, t] : report)
    out[tag] = {{"calls", t.calls}, {"input_tokens", t.input_tokens}, {"output_tokens", t.output_tokens}};
  return out;
}

OracleGateway::OracleGateway(std::unique_ptr<OracleBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)),
      options_(options),
      in_flight_(std::clamp<std::ptrdiff_t>(options.in_flight_cap, 1, 1024)) {
  if (!backend_) throw OracleError("oracle gateway needs a backend");
}

BackendReply OracleGateway::invoke_with_retry(const OracleRequest& request) {
  for (int attempt = 0;; ++attempt) {
    try {
      return backend_->invoke(request);
    } catch (const TransientOracleError& ex) {
      if (attempt >= options_.max_retries) throw;
      auto delay = options_.base_backoff * (1LL << std::min(attempt, 20));
      delay = std::min<std::chrono::milliseconds>(delay, options_.max_backoff);
      spdlog::warn("oracle {} transient failure ({}), retry {} in {} ms", to_string(request.kind), ex.what(),
                   attempt + 1, delay.count());
      std::this_thread::sleep_for(delay);
    }
  }
}

void OracleGateway::record(const OracleRequest& request, const BackendReply& reply) {
  TokenCounts t = reply.usage.value_or(
      TokenCounts{json_token_count(request.payload), json_token_count(reply.result)});
  std::lock_guard lock(meter_);
  CallRecord rec;
  rec.seq = log_.size();
  rec.kind = request.kind;
  rec.call_site = request.call_site;
  rec.payload_digest = short_digest(request.payload.dump());
  rec.result_digest = short_digest(reply.result.dump());
  rec.input_tokens = t.input;
  rec.output_tokens = t.output;
  rec.refused = is_refusal(reply.result);
  log_.push_back(std::move(rec));
  usage_.push_back({request.call_site, t.input, t.output});
}

json OracleGateway::dispatch(const OracleRequest& request) {
  std::unique_lock<std::mutex> serial(serial_, std::defer_lock);
  if (options_.deterministic) serial.lock();
  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  OracleRequest attempt = request;
  for (int ask = 0; ask < 2; ++ask) {
    BackendReply reply = invoke_with_retry(attempt);
    record(attempt, reply);
    auto problem = validate_result(attempt, reply.result);
    if (!problem) return std::move(reply.result);
    if (ask == 1)
      throw SchemaViolationError(std::string(to_string(request.kind)) + " response violates its schema after a re-ask: " +
                                 *problem + "; response was " + reply.result.dump().substr(0, 400));
    spdlog::warn("oracle {} response invalid ({}), re-asking once", to_string(request.kind), *problem);
    attempt.payload["repair_hint"] = *problem;
  }
  throw SchemaViolationError("unreachable");
}

UsageReport OracleGateway::usage_report() const {
  std::lock_guard lock(meter_);
  UsageReport report;
  for (const auto& u : usage_) {
    auto& t = report[u.call_site];
    ++t.calls;
    t.input_tokens += u.input_tokens;
    t.output_tokens += u.output_tokens;
  }
  return report;
}

std::vector<CallRecord> OracleGateway::call_log() const {
  std::lock_guard lock(meter_);
  return log_;
}

void OracleGateway::write_transcript(std::ostream& out) const {
  for (const auto& r : call_log()) {
    json j = {{"seq", r.seq},
              {"kind", to_string(r.kind)},
              {"call_site", r.call_site},
              {"payload_digest", r.payload_digest},
              {"result_digest", r.result_digest},
              {"tokens", {{"input", r.input_tokens}, {"output", r.output_tokens}}},
              {"refused", r.refused}};
    out << j.dump() << '\n';
  }
}

}  // namespace hgr::oracle
