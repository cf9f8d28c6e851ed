#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "torricelli/geometry.hpp"
#include "torricelli/sphere.hpp"

namespace torricelli::cli {

using Json = nlohmann::ordered_json;

// Parsed input document: one configuration (planar/spatial or spherical),
// optional solver options, and a digest of the raw bytes for report echoes.
struct ConfigFile {
  std::variant<Configuration, SphereConfiguration> config;
  std::optional<double> residual_tolerance;
  std::optional<int> max_iterations;
  std::string digest;

  bool on_sphere() const noexcept {
    return std::holds_alternative<SphereConfiguration>(config);
  }
  const Configuration& euclidean() const {
    return std::get<Configuration>(config);
  }
  const SphereConfiguration& sphere() const {
    return std::get<SphereConfiguration>(config);
  }
};

// FNV-1a 64-bit hash of the bytes, rendered "fnv1a64:<16 hex digits>".
std::string fnv1a64_digest(const std::string& bytes);

// Parses and validates a configuration document. Error(InvalidArgument)
// with a message naming the offending field on any problem.
ConfigFile parse_config(const std::string& text);

// Reads the file at `path` and parses it; the digest covers the raw bytes.
ConfigFile load_config(const std::string& path);

Json to_json(const Vec& v);

// Serializes with two-space indentation and a trailing newline. Reals use
// shortest round-trip formatting, so parsing the output recovers every
// value bit-exactly.
std::string dump_report(const Json& report);

}  // namespace torricelli::cli
