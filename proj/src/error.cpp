#include "polyiso/error.hpp"

namespace polyiso {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadDocument: return "BadDocument";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::DegenerateFacet: return "DegenerateFacet";
    case ErrorKind::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::VolumeTooLarge: return "VolumeTooLarge";
    case ErrorKind::VolumeOutOfRange: return "VolumeOutOfRange";
    case ErrorKind::EmptyPiece: return "EmptyPiece";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::NoFeasibleRegion: return "NoFeasibleRegion";
    case ErrorKind::ProjectionDegenerate: return "ProjectionDegenerate";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RootNotBracketed:
    case ErrorKind::NoFeasibleRegion:
    case ErrorKind::ProjectionDegenerate:
    case ErrorKind::InsufficientSamples:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace polyiso
