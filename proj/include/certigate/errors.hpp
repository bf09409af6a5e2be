#pragma once

#include <stdexcept>
#include <string>

namespace certigate {

// Base for all typed errors. `code()` is the stable machine-readable name;
// what() carries the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define CERTIGATE_ERROR(NAME)                       \
  class NAME : public Error {                       \
   public:                                          \
    explicit NAME(const std::string& msg)           \
        : Error(#NAME, msg) {}                      \
  }

CERTIGATE_ERROR(ParseError);
CERTIGATE_ERROR(InvalidInterval);
CERTIGATE_ERROR(InconsistentHistory);
CERTIGATE_ERROR(DimensionMismatch);
CERTIGATE_ERROR(HashMismatch);
CERTIGATE_ERROR(ArityMismatch);
CERTIGATE_ERROR(IndexOutOfRange);
CERTIGATE_ERROR(WitnessRejected);
CERTIGATE_ERROR(UnresolvedRecordRef);
CERTIGATE_ERROR(UnknownClass);
CERTIGATE_ERROR(ConfigurationError);
CERTIGATE_ERROR(SoundnessViolation);
CERTIGATE_ERROR(UnauthorizedChallenger);
CERTIGATE_ERROR(UnknownCertificate);
CERTIGATE_ERROR(NoUpheldChallenge);

#undef CERTIGATE_ERROR

}  // namespace certigate
