#include <algorithm>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fermat/corpus.hpp"
#include "fermat/errors.hpp"
#include "fermat/instance_io.hpp"

namespace {

using fermat::io::Instance;
using fermat::io::Kind;
using fermat::io::RunOptions;

struct BatchFlags {
  std::vector<std::string> files;
  bool pretty = false;
  bool oracle = false;
  std::optional<double> tol;
};

void add_batch_flags(CLI::App* cmd, BatchFlags& flags, bool oracle_flag) {
  cmd->add_option("files", flags.files, "instance files (JSON)")
      ->required()
      ->expected(-1);
  cmd->add_flag("--pretty", flags.pretty, "human-readable output");
  cmd->add_option("--tol", flags.tol, "residual tolerance override");
  if (oracle_flag)
    cmd->add_flag("--oracle", flags.oracle,
                  "attach the iterative cross-check to each record");
}

void emit(const nlohmann::json& record, bool pretty) {
  if (pretty)
    fermat::io::print_pretty(std::cout, record);
  else
    std::cout << fermat::io::serialize_record(record) << "\n";
}

/// Exit codes: 0 all records solved and consistent, 2 invalid input anywhere
/// in the batch, 3 a residual check failed. The most severe code wins.
int run_batch(const std::set<Kind>& accepted, const BatchFlags& flags,
              bool verify) {
  RunOptions options;
  options.tolerance = flags.tol;
  options.attach_oracle = flags.oracle || verify;
  options.verify = verify;

  int exit_code = 0;
  const auto raise = [&exit_code](int code) {
    exit_code = std::max(exit_code, code);
  };

  for (const auto& file : flags.files) {
    std::vector<Instance> instances;
    try {
      instances = fermat::io::load_instances(file);
    } catch (const fermat::Error& e) {
      nlohmann::json record{
          {"status", "error"},
          {"file", file},
          {"error",
           {{"code", to_string(e.code())}, {"message", e.what()}}}};
      emit(record, flags.pretty);
      raise(2);
      continue;
    }
    for (const auto& inst : instances) {
      nlohmann::json record;
      if (!accepted.count(inst.kind)) {
        record["instance"] = fermat::io::instance_json(inst);
        record["status"] = "error";
        record["error"] = {
            {"code", to_string(fermat::ErrorCode::malformed_instance)},
            {"message", std::string("kind ") + to_string(inst.kind) +
                            " is not accepted by this subcommand"}};
      } else {
        record = fermat::io::run_instance(inst, options);
      }
      emit(record, flags.pretty);
      raise(fermat::io::record_exit_code(record));
    }
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Closed-form solver for the weighted three-anchor shortest-network "
      "point, with inverse weight assignment and an independent iterative "
      "cross-check"};
  app.require_subcommand(1);

  BatchFlags solve_flags, classical_flags, inverse_flags, inverse3d_flags,
      verify_flags;

  auto* solve_cmd =
      app.add_subcommand("solve", "weighted planar instances (kind direct2d)");
  add_batch_flags(solve_cmd, solve_flags, true);

  auto* classical_cmd = app.add_subcommand(
      "classical", "equal-weight instances (kind classical2d)");
  add_batch_flags(classical_cmd, classical_flags, true);

  auto* inverse_cmd = app.add_subcommand(
      "inverse", "weight assignment for a planar target (kind inverse2d)");
  add_batch_flags(inverse_cmd, inverse_flags, false);

  auto* inverse3d_cmd = app.add_subcommand(
      "inverse3d", "weight assignment for a spatial target (kind inverse3d)");
  add_batch_flags(inverse3d_cmd, inverse3d_flags, false);

  auto* verify_cmd = app.add_subcommand(
      "verify", "solve and require closed form and oracle to agree");
  add_batch_flags(verify_cmd, verify_flags, false);

  auto* corpus_cmd = app.add_subcommand(
      "corpus", "run the built-in regression corpus and print a table");

  CLI11_PARSE(app, argc, argv);

  if (solve_cmd->parsed())
    return run_batch({Kind::direct2d}, solve_flags, false);
  if (classical_cmd->parsed())
    return run_batch({Kind::classical2d}, classical_flags, false);
  if (inverse_cmd->parsed())
    return run_batch({Kind::inverse2d}, inverse_flags, false);
  if (inverse3d_cmd->parsed())
    return run_batch({Kind::inverse3d}, inverse3d_flags, false);
  if (verify_cmd->parsed())
    return run_batch({Kind::direct2d, Kind::classical2d}, verify_flags, true);
  if (corpus_cmd->parsed())
    return fermat::io::run_corpus(std::cout).ok() ? 0 : 3;
  return 1;
}
