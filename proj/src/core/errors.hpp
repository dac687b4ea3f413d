// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace uws {

enum class ErrorCode {
  InvalidArgument,
  TotalInternalReflection,
  NoForwardIntersection,
  DegenerateRays,
  BehindCamera,
  PointBehindCamera,
  DistortionInversionFailed,
  IndexOutOfPhysicalRange,
  DepthNotReachable,
  ConvergenceFailure,
  OutOfBoundsPixel,
  EmptyLocus,
  EmptyDomain,
  WindowOutOfBounds,
  ImageSizeMismatch,
  SingularNormalEquations,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uws
