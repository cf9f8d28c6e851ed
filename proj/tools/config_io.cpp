#include "config_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "torricelli/errors.hpp"

namespace torricelli::cli {

namespace {

using torricelli::Error;
using torricelli::ErrorCode;

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
  throw Error(ErrorCode::InvalidArgument, field + ": " + problem);
}

double number_at(const Json& node, const std::string& field) {
  if (!node.is_number()) fail(field, "expected a number");
  return node.get<double>();
}

double finite_at(const Json& node, const std::string& field) {
  const double value = number_at(node, field);
  if (!std::isfinite(value)) fail(field, "must be finite");
  return value;
}

Point parse_coords(const Json& node, const std::string& field, int dim) {
  if (!node.is_array()) fail(field, "expected an array of numbers");
  if (static_cast<int>(node.size()) != dim)
    fail(field, "expected " + std::to_string(dim) + " coordinates, got " +
                    std::to_string(node.size()));
  Point p = Vec::zero(dim);
  for (int c = 0; c < dim; ++c)
    p[c] = finite_at(node[static_cast<std::size_t>(c)],
                     field + "[" + std::to_string(c) + "]");
  return p;
}

SpherePoint parse_sphere_point(const Json& node, const std::string& field) {
  if (node.contains("lat_deg") || node.contains("lon_deg")) {
    if (!node.contains("lat_deg")) fail(field + ".lat_deg", "missing");
    if (!node.contains("lon_deg")) fail(field + ".lon_deg", "missing");
    const double lat = finite_at(node["lat_deg"], field + ".lat_deg");
    const double lon = finite_at(node["lon_deg"], field + ".lon_deg");
    if (lat < -90.0 || lat > 90.0)
      fail(field + ".lat_deg", "must lie in [-90, 90]");
    const double lat_rad = lat * std::numbers::pi / 180.0;
    const double lon_rad = lon * std::numbers::pi / 180.0;
    return SpherePoint::normalized(
        Vec(std::cos(lat_rad) * std::cos(lon_rad),
            std::cos(lat_rad) * std::sin(lon_rad), std::sin(lat_rad)));
  }
  if (!node.contains("coords"))
    fail(field, "needs either coords or lat_deg/lon_deg");
  const Point raw = parse_coords(node["coords"], field + ".coords", 3);
  if (raw.norm() < 1e-12) fail(field + ".coords", "zero vector has no direction");
  return SpherePoint::normalized(raw);
}

}  // namespace

std::string fnv1a64_digest(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

ConfigFile parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("json: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  if (!doc.contains("version")) fail("version", "missing");
  if (!doc["version"].is_string() || doc["version"] != "1")
    fail("version", "unrecognized (expected \"1\")");

  if (!doc.contains("dimension")) fail("dimension", "missing");
  const Json& dim_node = doc["dimension"];
  const bool sphere = dim_node.is_string() && dim_node == "sphere";
  if (!sphere && !(dim_node.is_number_integer() &&
                   (dim_node == 2 || dim_node == 3)))
    fail("dimension", "must be 2, 3, or \"sphere\"");

  if (!doc.contains("points")) fail("points", "missing");
  if (!doc["points"].is_array() || doc["points"].empty())
    fail("points", "expected a non-empty array");

  std::optional<double> tolerance;
  std::optional<int> max_iterations;
  if (doc.contains("options")) {
    const Json& options = doc["options"];
    if (!options.is_object()) fail("options", "expected an object");
    if (options.contains("residual_tolerance")) {
      const double t = finite_at(options["residual_tolerance"],
                                 "options.residual_tolerance");
      if (!(t > 0.0)) fail("options.residual_tolerance", "must be positive");
      tolerance = t;
    }
    if (options.contains("max_iterations")) {
      const Json& node = options["max_iterations"];
      if (!node.is_number_integer() || node.get<int>() < 1)
        fail("options.max_iterations", "must be a positive integer");
      max_iterations = node.get<int>();
    }
  }

  auto weight_of = [](const Json& node, const std::string& field) {
    if (!node.contains("weight")) fail(field + ".weight", "missing");
    const double w = finite_at(node["weight"], field + ".weight");
    if (w < 0.0) fail(field + ".weight", "must be nonnegative");
    return w;
  };

  if (sphere) {
    std::vector<SphereWeightedPoint> points;
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
      const std::string field = "points[" + std::to_string(i) + "]";
      const Json& node = doc["points"][i];
      if (!node.is_object()) fail(field, "expected an object");
      points.emplace_back(parse_sphere_point(node, field),
                          weight_of(node, field));
    }
    return ConfigFile{SphereConfiguration(std::move(points)), tolerance,
                      max_iterations, fnv1a64_digest(text)};
  }

  const int d = dim_node.get<int>();
  std::vector<WeightedPoint> points;
  for (std::size_t i = 0; i < doc["points"].size(); ++i) {
    const std::string field = "points[" + std::to_string(i) + "]";
    const Json& node = doc["points"][i];
    if (!node.is_object()) fail(field, "expected an object");
    if (node.contains("lat_deg") || node.contains("lon_deg"))
      fail(field, "lat_deg/lon_deg are only valid with dimension \"sphere\"");
    if (!node.contains("coords")) fail(field + ".coords", "missing");
    points.emplace_back(parse_coords(node["coords"], field + ".coords", d),
                        weight_of(node, field));
  }
  return ConfigFile{Configuration(std::move(points), d), tolerance,
                    max_iterations, fnv1a64_digest(text)};
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::InvalidArgument, "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

Json to_json(const Vec& v) {
  Json array = Json::array();
  for (int c = 0; c < v.dim(); ++c) array.push_back(v[c]);
  return array;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace torricelli::cli
