#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace certigate {

using json = nlohmann::json;

/*
Canonical serialization and hashing
===================================

Every hashed artifact (network files, contracts, certificate tokens, log
entries) is reduced to one canonical byte string:

  - JSON object keys in lexicographic order (nlohmann's default map backing),
  - no insignificant whitespace,
  - rationals pre-normalized to "p/q" strings by the callers,
  - integers and booleans only; floating-point numbers are rejected outright
    so no platform-dependent formatting can leak into a digest,
  - UTF-8 with nlohmann's standard control-character escaping.

Digest = SHA-256 over those bytes, lowercase hex. Objects that embed their own
digest hash the object with that field removed ("payload").
*/

// Rejects any embedded floating-point number with ParseError.
std::string canonical_dump(const json& j);

std::string sha256_hex(std::string_view bytes);

// sha256_hex(canonical_dump(j)).
std::string canonical_hash(const json& j);

// canonical_hash of `j` with `self_hash_field` erased, for self-digesting
// objects.
std::string payload_hash(json j, const char* self_hash_field);

inline constexpr const char* kZeroDigest =
    "0000000000000000000000000000000000000000000000000000000000000000";

}  // namespace certigate
