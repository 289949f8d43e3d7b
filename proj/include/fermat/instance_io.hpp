#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fermat::io {

enum class Kind { direct2d, classical2d, inverse2d, inverse3d };

const char* to_string(Kind kind);
Kind kind_from_string(const std::string& name);

/// One problem as read from an instance file. Coordinates are stored with a
/// z slot so planar and spatial kinds share a representation; planar kinds
/// leave z at zero.
struct Instance {
  Kind kind = Kind::direct2d;
  std::string label;
  std::vector<std::array<double, 3>> anchors;
  std::vector<double> weights;           // direct2d only
  std::array<double, 3> target{0, 0, 0}; // inverse kinds only
  bool has_target = false;
  std::optional<double> tolerance;       // per-instance residual override
};

/// Parses one instance object or an array of them. Field errors throw
/// fermat::Error with code malformed_instance.
std::vector<Instance> parse_instances(const std::string& text);
std::vector<Instance> load_instances(const std::string& path);

nlohmann::json instance_json(const Instance& inst);

struct RunOptions {
  std::optional<double> tolerance;  // command-line override, beats the file's
  bool attach_oracle = false;       // add the iterative cross-check
  bool verify = false;              // require closed form and oracle to agree
};

/// Runs one instance and returns its structured record. Input and math
/// failures come back as error records instead of exceptions.
nlohmann::json run_instance(const Instance& inst, const RunOptions& options);

/// 0 solved and consistent, 2 invalid input, 3 identity or oracle residual
/// above tolerance.
int record_exit_code(const nlohmann::json& record);

/// Single-line form with stable key order and shortest round-trip numbers.
std::string serialize_record(const nlohmann::json& record);

void print_pretty(std::ostream& out, const nlohmann::json& record);

}  // namespace fermat::io
