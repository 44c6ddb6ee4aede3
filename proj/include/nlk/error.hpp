// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nlk {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain = 2,
  kPrecondition = 3,
  kNotInUk = 4,
  kTailDivergent = 5,
  kUnsupportedOrder = 6,
  kEvaluation = 7,
  kIllConditioned = 8,
  kGridTooCoarse = 9,
  kSamplerDegenerate = 10,
};

const char* error_code_name(ErrorCode code);

/// Base exception of the library. Every failure carries a code that the C
/// interface maps one-to-one onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nlk
