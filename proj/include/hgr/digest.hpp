#pragma once

#include <string>
#include <string_view>

namespace hgr {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// First 16 hex digits of the SHA-256; used for digests embedded in traces.
std::string short_digest(std::string_view data);

}  // namespace hgr
