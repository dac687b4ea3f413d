// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "errors.hpp"

namespace uws {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:          return "InvalidArgument";
    case ErrorCode::TotalInternalReflection:  return "TotalInternalReflection";
    case ErrorCode::NoForwardIntersection:    return "NoForwardIntersection";
    case ErrorCode::DegenerateRays:           return "DegenerateRays";
    case ErrorCode::BehindCamera:             return "BehindCamera";
    case ErrorCode::PointBehindCamera:        return "PointBehindCamera";
    case ErrorCode::DistortionInversionFailed:return "DistortionInversionFailed";
    case ErrorCode::IndexOutOfPhysicalRange:  return "IndexOutOfPhysicalRange";
    case ErrorCode::DepthNotReachable:        return "DepthNotReachable";
    case ErrorCode::ConvergenceFailure:       return "ConvergenceFailure";
    case ErrorCode::OutOfBoundsPixel:         return "OutOfBoundsPixel";
    case ErrorCode::EmptyLocus:               return "EmptyLocus";
    case ErrorCode::EmptyDomain:              return "EmptyDomain";
    case ErrorCode::WindowOutOfBounds:        return "WindowOutOfBounds";
    case ErrorCode::ImageSizeMismatch:        return "ImageSizeMismatch";
    case ErrorCode::SingularNormalEquations:  return "SingularNormalEquations";
    case ErrorCode::ConfigError:              return "ConfigError";
    case ErrorCode::IoError:                  return "IoError";
  }
  return "UnknownError";
}

}  // namespace uws
