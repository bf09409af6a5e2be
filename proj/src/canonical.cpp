#include "certigate/canonical.hpp"

#include <openssl/evp.h>

#include "certigate/errors.hpp"

namespace certigate {

namespace {

void reject_floats(const json& j) {
  if (j.is_number_float())
    throw ParseError("floating-point value in canonical payload");
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) reject_floats(v);
  } else if (j.is_array()) {
    for (const auto& v : j) reject_floats(v);
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  reject_floats(j);
  return j.dump();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("InternalError", "SHA-256 digest failed");
  static const char* hexdigits = "0123456789abcdef";
  std::string out;
  out.resize(static_cast<size_t>(len) * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hexdigits[(md[i] >> 4) & 0xF];
    out[2 * i + 1] = hexdigits[md[i] & 0xF];
  }
  return out;
}

std::string canonical_hash(const json& j) { return sha256_hex(canonical_dump(j)); }

std::string payload_hash(json j, const char* self_hash_field) {
  j.erase(self_hash_field);
  return canonical_hash(j);
}

}  // namespace certigate
