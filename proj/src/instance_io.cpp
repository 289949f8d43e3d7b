#include "fermat/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fermat/errors.hpp"
#include "fermat/inverse.hpp"
#include "fermat/oracle.hpp"
#include "fermat/solver.hpp"

namespace fermat::io {

using nlohmann::json;

namespace {

// agreement bounds for --oracle / verify, matching the iterative method's
// expected accuracy rather than the closed form's
constexpr double kOraclePointTol = 1e-6;  // times the longest side
constexpr double kOracleValueTol = 1e-6;  // relative

constexpr double kDefaultResidualTol = 1e-9;

int anchor_count(Kind kind) { return kind == Kind::inverse3d ? 4 : 3; }
int dimension(Kind kind) { return kind == Kind::inverse3d ? 3 : 2; }

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::malformed_instance, message);
}

double number_field(const json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

std::array<double, 3> parse_point(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    malformed(std::string(what) + " must be an array of " +
              std::to_string(dim) + " coordinates");
  std::array<double, 3> p{0, 0, 0};
  for (int c = 0; c < dim; ++c) p[c] = number_field(j[c], what);
  return p;
}

Instance parse_one(const json& j) {
  if (!j.is_object()) malformed("instance must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    malformed("instance needs a string field 'kind'");

  Instance inst;
  inst.kind = kind_from_string(j["kind"].get<std::string>());
  const int dim = dimension(inst.kind);
  const int count = anchor_count(inst.kind);

  if (!j.contains("anchors") || !j["anchors"].is_array() ||
      static_cast<int>(j["anchors"].size()) != count)
    malformed("'anchors' must list exactly " + std::to_string(count) +
              " points for kind " + to_string(inst.kind));
  for (const auto& a : j["anchors"])
    inst.anchors.push_back(parse_point(a, dim, "anchor"));

  const bool wants_weights = inst.kind == Kind::direct2d;
  if (j.contains("weights") != wants_weights)
    malformed(wants_weights ? "kind direct2d needs a 'weights' array"
                            : "'weights' only applies to kind direct2d");
  if (wants_weights) {
    const auto& w = j["weights"];
    if (!w.is_array() || w.size() != 3)
      malformed("'weights' must be an array of 3 numbers");
    for (const auto& v : w) inst.weights.push_back(number_field(v, "weight"));
  }

  const bool wants_target =
      inst.kind == Kind::inverse2d || inst.kind == Kind::inverse3d;
  if (j.contains("target") != wants_target)
    malformed(wants_target ? "inverse kinds need a 'target' point"
                           : "'target' only applies to inverse kinds");
  if (wants_target) {
    inst.target = parse_point(j["target"], dim, "target");
    inst.has_target = true;
  }

  if (j.contains("options")) {
    const auto& opt = j["options"];
    if (!opt.is_object()) malformed("'options' must be an object");
    if (opt.contains("tol")) {
      const double tol = number_field(opt["tol"], "options.tol");
      if (!(tol > 0)) malformed("options.tol must be positive");
      inst.tolerance = tol;
    }
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) malformed("'label' must be a string");
    inst.label = j["label"].get<std::string>();
  }
  return inst;
}

Eigen::Vector2d vec2(const std::array<double, 3>& p) { return {p[0], p[1]}; }
Eigen::Vector3d vec3(const std::array<double, 3>& p) {
  return {p[0], p[1], p[2]};
}

std::array<Eigen::Vector2d, 3> planar_anchors(const Instance& inst) {
  return {vec2(inst.anchors[0]), vec2(inst.anchors[1]), vec2(inst.anchors[2])};
}

json point_json(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }

std::string regime_tag(const Solution<double>& s) {
  if (s.regime == Regime::interior) return "interior";
  return "vertex-" + std::to_string(s.vertex + 1);
}

json diagnostics_json(const Diagnostics<double>& d) {
  return json{{"stationarity", d.stationarity},
              {"anchor_distance", d.anchor_distance},
              {"coeff_pair_identity", d.coeff_pair_identity},
              {"coeff_side_identity", d.coeff_side_identity},
              {"min_square_split", d.min_square_split},
              {"dual_split", d.dual_split}};
}

/// Runs the iterative cross-check and folds its verdict into `consistent`
/// when verification was asked for.
json oracle_json(const TriangleInstance<double>& t, const Solution<double>& s,
                 bool enforce, bool& consistent) {
  const auto report = weiszfeld(t);
  const double scale = longest_side(t.anchor);
  const double oracle_value =
      weighted_distance_sum(t.anchor, t.weight, report.point);
  const double point_gap = (report.point - s.point).norm();
  const double value_gap =
      std::abs(oracle_value - s.value) / std::max(std::abs(s.value), 1e-300);

  json o{{"point", point_json(report.point)},
         {"value", oracle_value},
         {"iterations", report.iterations},
         {"converged", report.converged},
         {"point_gap", point_gap},
         {"value_gap", value_gap}};
  o["locked_vertex"] =
      report.locked_vertex ? json(*report.locked_vertex + 1) : json(nullptr);

  if (enforce) {
    bool agree = report.converged && value_gap <= kOracleValueTol &&
                 point_gap <= kOraclePointTol * scale;
    if (s.regime == Regime::vertex)
      agree = agree && report.locked_vertex && *report.locked_vertex == s.vertex;
    o["agrees"] = agree;
    consistent = consistent && agree;
  }
  return o;
}

void run_direct(const Instance& inst, const RunOptions& options, double tol,
                json& record) {
  Tolerances<double> tols;
  tols.residual = tol;

  Solution<double> s;
  TriangleInstance<double> t;
  if (inst.kind == Kind::direct2d) {
    t = TriangleInstance<double>{
        planar_anchors(inst),
        Eigen::Vector3d(inst.weights[0], inst.weights[1], inst.weights[2])};
    s = solve(t, tols);
  } else {
    const auto a = planar_anchors(inst);
    s = solve_classical(a[0], a[1], a[2], tols);
    t = TriangleInstance<double>{a, Eigen::Vector3d::Ones()};
  }

  record["regime"] = regime_tag(s);
  record["point"] = point_json(s.point);
  record["value"] = s.value;
  record["diagnostics"] = diagnostics_json(s.diag);

  bool consistent = s.regime == Regime::vertex || s.diag.worst() <= tol;
  if (options.attach_oracle || options.verify)
    record["oracle"] = oracle_json(t, s, options.verify, consistent);
  record["consistent"] = consistent;
}

void run_inverse2d(const Instance& inst, double tol, json& record) {
  const auto inv = inverse_weights(planar_anchors(inst), vec2(inst.target));
  record["weights"] =
      json::array({inv.weight[0], inv.weight[1], inv.weight[2]});
  record["weight_scale"] = inv.scale;
  record["value"] = inv.min_value;
  record["power"] = inv.power;
  record["reoriented"] = inv.reoriented;
  record["diagnostics"] = json{{"stationarity", inv.stationarity}};
  record["consistent"] = inv.stationarity <= tol;
}

void run_inverse3d(const Instance& inst, double tol, json& record) {
  const Tetrahedron<double> tetra{{vec3(inst.anchors[0]), vec3(inst.anchors[1]),
                                   vec3(inst.anchors[2]),
                                   vec3(inst.anchors[3])}};
  const auto inv = inverse_weights(tetra, vec3(inst.target));
  record["weights"] = json::array(
      {inv.weight[0], inv.weight[1], inv.weight[2], inv.weight[3]});
  record["weight_scale"] = inv.scale;
  record["value"] = inv.min_value;
  record["power"] = inv.power;
  record["reoriented"] = inv.reoriented;
  record["diagnostics"] = json{{"stationarity", inv.stationarity}};
  record["consistent"] = inv.stationarity <= tol;
}

}  // namespace

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::direct2d: return "direct2d";
    case Kind::classical2d: return "classical2d";
    case Kind::inverse2d: return "inverse2d";
    case Kind::inverse3d: return "inverse3d";
  }
  return "unknown";
}

Kind kind_from_string(const std::string& name) {
  if (name == "direct2d") return Kind::direct2d;
  if (name == "classical2d") return Kind::classical2d;
  if (name == "inverse2d") return Kind::inverse2d;
  if (name == "inverse3d") return Kind::inverse3d;
  malformed("unknown kind '" + name + "'");
}

std::vector<Instance> parse_instances(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  std::vector<Instance> out;
  if (root.is_array()) {
    for (const auto& item : root) out.push_back(parse_one(item));
  } else {
    out.push_back(parse_one(root));
  }
  return out;
}

std::vector<Instance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instances(buffer.str());
}

json instance_json(const Instance& inst) {
  json j;
  j["kind"] = to_string(inst.kind);
  json anchors = json::array();
  const int dim = dimension(inst.kind);
  for (const auto& a : inst.anchors) {
    json p = json::array({a[0], a[1]});
    if (dim == 3) p.push_back(a[2]);
    anchors.push_back(p);
  }
  j["anchors"] = anchors;
  if (!inst.weights.empty()) j["weights"] = inst.weights;
  if (inst.has_target) {
    json p = json::array({inst.target[0], inst.target[1]});
    if (dim == 3) p.push_back(inst.target[2]);
    j["target"] = p;
  }
  if (inst.tolerance) j["options"] = json{{"tol", *inst.tolerance}};
  if (!inst.label.empty()) j["label"] = inst.label;
  return j;
}

json run_instance(const Instance& inst, const RunOptions& options) {
  json record;
  record["instance"] = instance_json(inst);
  const double tol =
      options.tolerance.value_or(inst.tolerance.value_or(kDefaultResidualTol));
  try {
    switch (inst.kind) {
      case Kind::direct2d:
      case Kind::classical2d:
        run_direct(inst, options, tol, record);
        break;
      case Kind::inverse2d:
        run_inverse2d(inst, tol, record);
        break;
      case Kind::inverse3d:
        run_inverse3d(inst, tol, record);
        break;
    }
    record["status"] = "ok";
  } catch (const Error& e) {
    record["status"] = "error";
    record["error"] = json{{"code", to_string(e.code())}, {"message", e.what()}};
  }
  return record;
}

int record_exit_code(const json& record) {
  if (record.value("status", "error") == "error") {
    const std::string code =
        record.contains("error") ? record["error"].value("code", "") : "";
    return code == to_string(ErrorCode::internal_inconsistency) ? 3 : 2;
  }
  return record.value("consistent", false) ? 0 : 3;
}

std::string serialize_record(const json& record) { return record.dump(); }

void print_pretty(std::ostream& out, const json& record) {
  out << std::setprecision(15);
  const auto& inst = record["instance"];
  out << inst["kind"].get<std::string>();
  if (inst.contains("label"))
    out << "  [" << inst["label"].get<std::string>() << "]";
  out << "\n";

  if (record["status"] == "error") {
    out << "  error: " << record["error"]["code"].get<std::string>() << " -- "
        << record["error"]["message"].get<std::string>() << "\n";
    return;
  }

  if (record.contains("regime"))
    out << "  regime: " << record["regime"].get<std::string>() << "\n";
  if (record.contains("point")) {
    out << "  point:  (";
    const auto& p = record["point"];
    for (std::size_t c = 0; c < p.size(); ++c)
      out << (c ? ", " : "") << p[c].get<double>();
    out << ")\n";
  }
  if (record.contains("weights")) {
    out << "  weights:";
    for (const auto& w : record["weights"]) out << " " << w.get<double>();
    out << "   (scale " << record["weight_scale"].get<double>() << ")\n";
    out << "  power:  " << record["power"].get<double>() << "\n";
  }
  out << "  value:  " << record["value"].get<double>() << "\n";
  if (record.contains("oracle")) {
    const auto& o = record["oracle"];
    out << "  oracle: point_gap=" << o["point_gap"].get<double>()
        << " value_gap=" << o["value_gap"].get<double>()
        << " iterations=" << o["iterations"].get<int>() << "\n";
  }
  out << "  consistent: " << (record["consistent"].get<bool>() ? "yes" : "no")
      << "\n";
}

}  // namespace fermat::io
