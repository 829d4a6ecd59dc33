#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyiso {

enum class ErrorKind {
  BadDocument,
  BadArgument,
  NonConvex,
  DegenerateFacet,
  DimensionTooHigh,
  NotFullDimensional,
  UnsupportedDimension,
  VolumeTooLarge,
  VolumeOutOfRange,
  EmptyPiece,
  OriginNotInterior,
  GridMismatch,
  InsufficientSamples,
  RootNotBracketed,
  NoFeasibleRegion,
  ProjectionDegenerate,
};

std::string_view to_string(ErrorKind kind);

// Numerical failures (as opposed to invalid input) map to a distinct CLI exit code.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polyiso
