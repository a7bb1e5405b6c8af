#pragma once
// FLD1 field files: one JSON header line
//   {"format":"FLD1","dims":[...],"lengths":[...],"name":"..."}
// followed by the samples as little-endian float64 in row-major order.

#include <filesystem>
#include <string>

#include "disperlim/spectral/field.hpp"

namespace disperlim::spectral {

struct NamedField {
  std::string name;
  RealField field;
};

void write_fld(const std::filesystem::path& path, const RealField& f, const std::string& name);
/// Throws ConfigError on a malformed header or a payload of the wrong length.
NamedField read_fld(const std::filesystem::path& path);

}  // namespace disperlim::spectral
