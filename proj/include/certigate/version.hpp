#pragma once

namespace certigate {

// Pinned into contract t_int and certificate provenance; a mismatch between
// a loaded contract and the running verifier is a configuration error.
inline constexpr const char* kVerifierVersion = "certigate-0.1.0";

}  // namespace certigate
