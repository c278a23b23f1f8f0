#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <semaphore>
#include <string>
#include <vector>

#include "hgr/oracle/request.hpp"

namespace hgr::oracle {

struct GatewayOptions {
  int max_retries = 3;
  std::chrono::milliseconds base_backoff{50};
  std::chrono::milliseconds max_backoff{1000};
  std::ptrdiff_t in_flight_cap = 8;
  /// Serialize calls so transcripts follow request order.
  bool deterministic = true;
};

struct UsageRecord {
  std::string call_site;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
};

/// One backend round trip as written to the transcript.
struct CallRecord {
  std::size_t seq = 0;
  OracleKind kind = OracleKind::Embed;
  std::string call_site;
  std::string payload_digest;
  std::string result_digest;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  bool refused = false;
};

struct UsageTotals {
  std::int64_t calls = 0;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;

  friend bool operator==(const UsageTotals&, const UsageTotals&) = default;
};

using UsageReport = std::map<std::string, UsageTotals>;

nlohmann::json usage_report_to_json(const UsageReport& report);

/// Whitespace tokens over every string inside a JSON value.
std::int64_t json_token_count(const nlohmann::json& value);

/// The single chokepoint for oracle traffic: validates results per kind, retries
/// transient failures with capped exponential backoff, re-asks once on a schema
/// violation and meters every round trip by call site.
class OracleGateway {
 public:
  explicit OracleGateway(std::unique_ptr<OracleBackend> backend, GatewayOptions options = {});

  OracleGateway(const OracleGateway&) = delete;
  OracleGateway& operator=(const OracleGateway&) = delete;

  /// Returns the validated result object, which may be a refusal.
  nlohmann::json dispatch(const OracleRequest& request);

  UsageReport usage_report() const;
  std::vector<CallRecord> call_log() const;

  /// JSONL, one record per round trip.
  void write_transcript(std::ostream& out) const;

  std::string backend_name() const { return backend_->name(); }
  const GatewayOptions& options() const noexcept { return options_; }

 private:
  BackendReply invoke_with_retry(const OracleRequest& request);
  void record(const OracleRequest& request, const BackendReply& reply);

  std::unique_ptr<OracleBackend> backend_;
  GatewayOptions options_;
  std::counting_semaphore<1024> in_flight_;
  std::mutex serial_;
  mutable std::mutex meter_;
  std::vector<CallRecord> log_;
  std::vector<UsageRecord> usage_;
};

}  // namespace hgr::oracle
