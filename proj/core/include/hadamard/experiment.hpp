#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hadamard/convex.hpp"
#include "hadamard/error.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/schedule.hpp"
#include "hadamard/solvers.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

enum class Algorithm { Implicit, Explicit };

const char* to_string(Algorithm algorithm);

struct Tolerances {
  double outer = 1e-6;
  double inner = 1e-10;
  int max_inner = 50'000'000;
  int certificate_probes = 256;
  bool operator==(const Tolerances&) const = default;
};

/// A complete, validated experiment.
///
/// JSON layout (optional fields in brackets):
///   {"name", "space", "convex_set", "mapping", "algorithm": "implicit"|"explicit",
///    ["schedule"], ["basepoint"], ["x0"], "budget", ["tolerances": {"outer", "inner",
///    "max_inner", "certificate_probes"}], ["seed"], ["output_dir"], ["reference_point"]}
/// The schedule defaults to the algorithm's default schedule, the basepoint to
/// the space origin. x0 is required for the explicit algorithm.
struct ExperimentConfig {
  std::string name = "experiment";
  SpaceDescriptor space;
  ConvexSetDescriptor convex_set;
  MappingDescriptor mapping;
  Algorithm algorithm = Algorithm::Implicit;
  Schedule schedule;
  Point basepoint;
  std::optional<Point> x0;
  long budget = 10000;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::optional<Point> reference_point;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates a config document. Throws ConfigError naming the
/// offending field as a JSON pointer.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// The fully resolved config; parse_config(config_to_json(c)) == c.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Config file error with the source line it refers to.
class ConfigFileError : public Error {
 public:
  ConfigFileError(std::string file, int line, std::string pointer, const std::string& message);

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string file_;
  int line_;
  std::string pointer_;
};

/// Parses `text` (the contents of `file`); errors are rethrown as
/// ConfigFileError with what() = "<file>:<line>: <pointer>: <message>".
ExperimentConfig parse_config_text(const std::string& text, const std::string& file = "<config>");
ExperimentConfig load_config(const std::filesystem::path& file);

/// 1-based line of the value addressed by JSON pointer `pointer` in `text`,
/// or 1 if it cannot be located.
int locate_pointer(const std::string& text, const std::string& pointer);

/// Applies HADAMARD_SEED from the environment, if set, to `config`.
void apply_seed_environment(ExperimentConfig& config);

struct ExperimentResult {
  IterationTrace trace;
  nlohmann::json summary;
  std::filesystem::path trace_path;
  std::filesystem::path summary_path;
  /// 0 converged, 1 budget exhausted.
  int exit_code = 1;
};

/// Runs the solver, then writes <output_dir>/<name>.trace.csv and
/// <output_dir>/<name>.summary.json. Outputs are written on budget exhaustion
/// too.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Runs the solver only.
IterationTrace solve(const ExperimentConfig& config);

/// CSV text of a trace: header n,fixed_residual,step,z_residual,ref_distance,qx_inner;
/// absent columns are empty; reals use 17 significant digits.
std::string trace_csv(const IterationTrace& trace);

/// Parses a compact space spec: euclidean:N, hyperbolic:N, tree-star:K:L,
/// tree-random:E[:seed], product:A+B, corrupted-demo (|x−y|^1.5 on R²), an
/// inline JSON space document, or a path to one. Throws ConfigError.
SpaceDescriptor parse_space_spec(const std::string& spec);

}  // namespace hadamard
