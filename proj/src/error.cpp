// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/error.hpp"

namespace nlk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kNotInUk: return "not-in-Uk";
    case ErrorCode::kTailDivergent: return "tail-divergent";
    case ErrorCode::kUnsupportedOrder: return "unsupported-order";
    case ErrorCode::kEvaluation: return "evaluation";
    case ErrorCode::kIllConditioned: return "ill-conditioned";
    case ErrorCode::kGridTooCoarse: return "grid-too-coarse";
    case ErrorCode::kSamplerDegenerate: return "sampler-degenerate";
  }
  return "unknown";
}

}  // namespace nlk
