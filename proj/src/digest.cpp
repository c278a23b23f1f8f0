#include "hgr/digest.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#include "hgr/errors.hpp"

namespace hgr {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::string out;
  out.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string short_digest(std::string_view data) { return sha256_hex(data).substr(0, 16); }

}  // namespace hgr
