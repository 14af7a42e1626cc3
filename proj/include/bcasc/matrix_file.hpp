#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bcasc/spherical_code.hpp"

namespace bcasc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kMatrixFileSchema = "bcasc-1";

/// Thrown by parse_matrix_file; the message names the first schema violation.
class MatrixFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixFileMetadata {
  double coherence = 0.0;
  std::string config_digest;
  std::string tool_version = kToolVersion;
  std::uint64_t rng_seed = 0;
};

struct ParsedMatrixFile {
  SphericalCode code;
  MatrixFileMetadata metadata;
};

/// JSON document (schema "bcasc-1") holding the code column-major as
/// [re, im] pairs. Numbers are printed in shortest round-trip form, so
/// parse(serialize(code)) reproduces the code bit for bit and
/// serialize(parse(text)) is byte-identical for any valid document.
std::string serialize_matrix_file(const SphericalCode& code,
                                  const MatrixFileMetadata& metadata);

/// Validates the schema and unit-norm invariant (within 1e-6) before
/// constructing the code. Throws MatrixFileError naming the first violation.
ParsedMatrixFile parse_matrix_file(const std::string& text);

/// FNV-1a hash of a canonical config rendering, as 16 hex digits.
std::string config_digest(const std::string& canonical_config);

}  // namespace bcasc
