#include "bcasc/matrix_file.hpp"

#include <cmath>
#include <json.hpp>

namespace bcasc {

namespace {

using nlohmann::json;

json require_key(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) {
    throw MatrixFileError(std::string("missing key '") + key + "' in " + where);
  }
  return j.at(key);
}

}  // namespace

std::string serialize_matrix_file(const SphericalCode& code,
                                  const MatrixFileMetadata& metadata) {
  json columns = json::array();
  for (int j = 0; j < code.size(); ++j) {
    json column = json::array();
    for (int i = 0; i < code.dim(); ++i) {
      const std::complex<double> v = code.entries()(i, j);
      column.push_back(json::array({v.real(), v.imag()}));
    }
    columns.push_back(std::move(column));
  }
  json doc;
  doc["schema_version"] = kMatrixFileSchema;
  doc["n"] = code.dim();
  doc["m"] = code.size();
  doc["field"] = code.field() == Field::Real ? "real" : "complex";
  doc["columns"] = std::move(columns);
  doc["metadata"] = {{"coherence", metadata.coherence},
                     {"config_digest", metadata.config_digest},
                     {"tool_version", metadata.tool_version},
                     {"rng_seed", metadata.rng_seed}};
  return doc.dump(2) + "\n";
}

ParsedMatrixFile parse_matrix_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw MatrixFileError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MatrixFileError("document is not a JSON object");

  const json schema = require_key(doc, "schema_version", "document");
  if (!schema.is_string() || schema.get<std::string>() != kMatrixFileSchema) {
    throw MatrixFileError("schema_version must be \"bcasc-1\"");
  }

  const json jn = require_key(doc, "n", "document");
  const json jm = require_key(doc, "m", "document");
  if (!jn.is_number_integer() || jn.get<long>() < 1) {
    throw MatrixFileError("n must be a positive integer");
  }
  if (!jm.is_number_integer() || jm.get<long>() < 1) {
    throw MatrixFileError("m must be a positive integer");
  }
  const int n = jn.get<int>();
  const int m = jm.get<int>();

  const json jfield = require_key(doc, "field", "document");
  if (!jfield.is_string() ||
      (jfield.get<std::string>() != "complex" &&
       jfield.get<std::string>() != "real")) {
    throw MatrixFileError("field must be \"complex\" or \"real\"");
  }
  const Field field =
      jfield.get<std::string>() == "real" ? Field::Real : Field::Complex;

  const json columns = require_key(doc, "columns", "document");
  if (!columns.is_array() || static_cast<int>(columns.size()) != m) {
    throw MatrixFileError("columns must be an array of m = " +
                          std::to_string(m) + " columns");
  }
  Eigen::MatrixXcd entries(n, m);
  for (int j = 0; j < m; ++j) {
    const json& column = columns[j];
    if (!column.is_array() || static_cast<int>(column.size()) != n) {
      throw MatrixFileError("column " + std::to_string(j) +
                            " must hold n = " + std::to_string(n) +
                            " entries");
    }
    for (int i = 0; i < n; ++i) {
      const json& pair = column[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number()) {
        throw MatrixFileError("entry (" + std::to_string(i) + ", " +
                              std::to_string(j) +
                              ") must be a [re, im] number pair");
      }
      const double re = pair[0].get<double>();
      const double im = pair[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw MatrixFileError("entry (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") is not finite");
      }
      entries(i, j) = std::complex<double>(re, im);
    }
    const double norm = entries.col(j).norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw MatrixFileError("unit-norm violation at column " +
                            std::to_string(j));
    }
    if (field == Field::Real && (entries.col(j).imag().array() != 0.0).any()) {
      throw MatrixFileError("nonzero imaginary part at column " +
                            std::to_string(j) + " in a real-field file");
    }
  }

  const json meta = require_key(doc, "metadata", "document");
  if (!meta.is_object()) throw MatrixFileError("metadata must be an object");
  const json jcoh = require_key(meta, "coherence", "metadata");
  if (!jcoh.is_number()) throw MatrixFileError("metadata.coherence must be a number");
  const json jdig = require_key(meta, "config_digest", "metadata");
  if (!jdig.is_string()) throw MatrixFileError("metadata.config_digest must be a string");
  const json jver = require_key(meta, "tool_version", "metadata");
  if (!jver.is_string()) throw MatrixFileError("metadata.tool_version must be a string");
  const json jseed = require_key(meta, "rng_seed", "metadata");
  if (!jseed.is_number_integer()) {
    throw MatrixFileError("metadata.rng_seed must be an integer");
  }

  MatrixFileMetadata metadata;
  metadata.coherence = jcoh.get<double>();
  metadata.config_digest = jdig.get<std::string>();
  metadata.tool_version = jver.get<std::string>();
  metadata.rng_seed = jseed.get<std::uint64_t>();

  return ParsedMatrixFile{SphericalCode(std::move(entries), field),
                          std::move(metadata)};
}

std::string config_digest(const std::string& canonical_config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace bcasc
