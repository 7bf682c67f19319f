#pragma once

// Command-line orchestration: argument parsing, pipelines and artifacts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anosov/error.hpp"
#include "anosov/groups.hpp"
#include "anosov/symspace.hpp"

namespace anosov::cli {

enum class Command { Ball, Certify, Domain, SideGrowth, InfiniteSidedRepro, RestrictedDomain, Section };

std::string to_string(Command c);

struct RunPlan {
  Command command = Command::Domain;
  /// Path to a group JSON file or an inline "fx:name:params" fixture.
  std::string group;
  /// identity | axis | offaxis | path to a JSON matrix
  std::string base = "identity";
  int radius = 6;
  bool radius_given = false;
  /// omega1 | omegaDelta | custom
  std::string omega = "omega1";
  std::vector<double> omega_coefficients;
  /// flag | satake
  std::string mode = "satake";
  std::optional<int> depth;
  /// satake | spd-interior
  std::string region = "satake";
  int samples = 200;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;

  /// Everything except the output directory, so that artifacts do not
  /// depend on where they are written.
  nlohmann::json to_json() const;
};

/// Usage text including the exit-code table.
std::string help_text();

/// Parses argv[1..]. Throws Error(UsageError) naming the offending token.
RunPlan parse_args(const std::vector<std::string>& args);

struct ArtifactEntry {
  std::string file;
  std::string hash;
};

struct Manifest {
  std::vector<ArtifactEntry> files;
  nlohmann::json summary;
};

/// Runs the pipeline for `plan`, writes artifacts plus manifest.json into
/// plan.out and returns the manifest.
Manifest execute(const RunPlan& plan);

/// Section CSV for d = 3 groups; part of execute() for the section command.
std::vector<ArtifactEntry> emit_section(const RunPlan& plan);

/// 0 ok, 2 usage, 3 input, 4 numerical stall, 5 cap exceeded.
int exit_code(ErrorCode code);

/// Resolves --group.
groups::GroupSpec load_group(const std::string& source);

/// Resolves --base for a group of dimension d.
symspace::SpdPoint load_basepoint(const std::string& base, int d);

/// Entry point used by the executable: parse, execute, map errors.
int run(const std::vector<std::string>& args);

}  // namespace anosov::cli
