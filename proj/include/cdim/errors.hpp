#pragma once

#include <stdexcept>
#include <string>

namespace cdim {

enum class ErrorCode {
  InvalidArgument,
  MixedBackend,
  CapExceeded,
  UnknownElement,
  NotSubgroup,
  NotNormal,
  NotCentral,
  NotAbelian,
  NotCoprime,
  NotNilpotent,
  NotAutomorphism,
  RelationViolation,
  OrderMismatch,
  ActionNotFaithful,
  SearchExhausted,
  LatticeBudgetExceeded,
  NoIntertwiner,
  ScalarSearchFailed,
  UnrecognizedSimpleGroup,
  LayerDecompositionFailed,
  Overflow,
  ParseError,
  CacheError,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace cdim
