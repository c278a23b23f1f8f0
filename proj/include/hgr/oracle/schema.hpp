#pragma once

#include <optional>
#include <string>

#include "hgr/oracle/request.hpp"

namespace hgr::oracle {

/// Checks a result object against the fixed schema of `request.kind`.
/// Returns a diagnostic on violation. Refusals always validate.
std::optional<std::string> validate_result(const OracleRequest& request, const nlohmann::json& result);

}  // namespace hgr::oracle
