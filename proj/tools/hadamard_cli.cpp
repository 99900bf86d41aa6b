// Command-line front end: run experiments, verify model spaces, check schedules.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hadamard/experiment.hpp"
#include "hadamard/harness.hpp"
#include "hadamard/json_io.hpp"

namespace {

using namespace hadamard;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

struct RunOptions {
  std::vector<std::string> configs;
  std::optional<std::uint64_t> seed;
  std::optional<long> budget;
  std::optional<std::string> output;
  int jobs = 1;
};

struct RunOutcome {
  int code = kExitInvalid;
  std::string message;
};

RunOutcome run_one(const std::string& file, const RunOptions& opts) {
  RunOutcome out;
  ExperimentConfig config;
  try {
    config = load_config(file);
    apply_seed_environment(config);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.budget) {
      if (*opts.budget < 1) throw ConfigError("--budget", "budget must be at least 1");
      config.budget = *opts.budget;
    }
    if (opts.output) config.output_dir = *opts.output;
  } catch (const Error& e) {
    out.message = fmt::format("error: {}\n", e.what());
    return out;
  }
  try {
    const auto result = run_experiment(config);
    const auto& last = result.trace.rows.back();
    out.code = result.exit_code;
    out.message = fmt::format("{}: {} after {} rows, fixed_residual {:.3e}\n  trace   {}\n  summary {}\n",
                              config.name, to_string(result.trace.status), result.trace.rows.size(),
                              last.fixed_residual, result.trace_path.string(),
                              result.summary_path.string());
  } catch (const DomainError& e) {
    out.code = kExitInvalid;
    out.message = fmt::format("error: {}: {}\n", file, e.what());
  } catch (const std::exception& e) {
    out.code = kExitFailed;
    out.message = fmt::format("error: {}: {}\n", file, e.what());
  }
  return out;
}

int cmd_run(const RunOptions& opts) {
  std::vector<RunOutcome> outcomes(opts.configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < opts.configs.size();)
      outcomes[i] = run_one(opts.configs[i], opts);
  };
  const auto workers = static_cast<std::size_t>(std::clamp<int>(opts.jobs, 1, 256));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, opts.configs.size()); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  for (const auto& o : outcomes) {
    std::fputs(o.message.c_str(), o.code == kExitOk ? stdout : stderr);
    code = std::max(code, o.code);
  }
  return code;
}

struct VerifyOptions {
  std::string space;
  long trials = 10000;
  double eps = 1e-8;
  std::uint64_t seed = 0;
  std::optional<std::string> json_out;
};

int cmd_verify(const VerifyOptions& opts) {
  if (opts.trials < 1) {
    fmt::print(stderr, "error: --trials must be at least 1\n");
    return kExitInvalid;
  }
  if (!(opts.eps >= 0.0)) {
    fmt::print(stderr, "error: --eps must be nonnegative\n");
    return kExitInvalid;
  }
  SpaceDescriptor desc;
  try {
    desc = parse_space_spec(opts.space);
    make_space(desc);
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInvalid;
  }
  const Space space = make_space(desc);

  auto reports = check_space_axioms(space, opts.trials, opts.eps, opts.seed);
  auto inequalities = check_inequalities(space, opts.trials, opts.eps, opts.seed);
  reports.insert(reports.end(), inequalities.begin(), inequalities.end());

  fmt::print("space {}  trials {}  eps {:g}  seed {}\n", describe(desc), opts.trials, opts.eps, opts.seed);
  fmt::print("{:<28} {:>8} {:>10} {:>14}  {}\n", "property", "trials", "violations", "worst margin", "result");
  long failed = 0;
  for (const auto& r : reports) {
    fmt::print("{:<28} {:>8} {:>10} {:>14.6e}  {}\n", r.name, r.trials, r.violations, r.worst_margin + 0.0,
               r.passed() ? "ok" : "FAIL");
    if (!r.passed()) ++failed;
  }
  for (const auto& r : reports)
    if (!r.passed()) fmt::print("witness {}: {}\n", r.name, r.worst_witness.dump());

  if (opts.json_out) {
    nlohmann::json doc = {{"space", json_io::encode(desc)},
                          {"trials", opts.trials},
                          {"eps", opts.eps},
                          {"seed", opts.seed},
                          {"reports", nlohmann::json::array()}};
    for (const auto& r : reports) doc["reports"].push_back(to_json(r));
    std::ofstream out(*opts.json_out, std::ios::binary);
    out << doc.dump(2) << '\n';
  }
  fmt::print("{} of {} properties violated\n", failed, reports.size());
  return failed == 0 ? kExitOk : kExitFailed;
}

void print_condition(const char* label, const ConditionResult& c) {
  fmt::print("  {:<16} {:<5} {:<10} {}\n", label, c.pass ? "pass" : "FAIL",
             c.heuristic ? "heuristic" : "analytic", c.evidence);
}

int cmd_schedules(const std::string& file) {
  nlohmann::json doc;
  Schedule schedule;
  bool is_explicit = false;
  long horizon = 100000;
  try {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigFileError(file, 1, "", "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
      doc = nlohmann::json::parse(text);
      const auto algorithm =
          json_io::require_string(json_io::require_field(doc, "algorithm", ""), "/algorithm");
      if (algorithm != "implicit" && algorithm != "explicit")
        throw ConfigError("/algorithm", "expected \"implicit\" or \"explicit\"");
      is_explicit = algorithm == "explicit";
      if (doc.contains("schedule"))
        schedule = json_io::decode_schedule(doc["schedule"], "/schedule");
      else
        schedule = is_explicit ? default_explicit_schedule() : default_implicit_schedule();
      if (doc.contains("budget"))
        horizon = std::max(1000L, json_io::require_integer(doc["budget"], "/budget"));
    } catch (const nlohmann::json::parse_error&) {
      throw ConfigFileError(file, 1, "", "invalid JSON");
    } catch (const ConfigError& e) {
      throw ConfigFileError(file, locate_pointer(text, e.path()), "", e.what());
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInvalid;
  }

  fmt::print("{} ({} algorithm, horizon {})\n", file, is_explicit ? "explicit" : "implicit", horizon);
  bool ok = true;
  if (is_explicit) {
    const auto report = validate_schedules(schedule, horizon);
    print_condition("condition (i)", report.condition_i);
    print_condition("condition (ii)", report.condition_ii);
    print_condition("condition (iii)", report.condition_iii);
    ok = report.ok();
  } else {
    const auto cond = validate_implicit_schedule(schedule, horizon);
    print_condition("vanishing", cond);
    ok = cond.pass;
  }
  const long first = is_explicit ? 0 : 1;
  if (auto bad = check_schedule_ranges(schedule, first, horizon)) {
    fmt::print("  {:<16} FAIL  {}\n", "ranges", *bad);
    ok = false;
  } else {
    fmt::print("  {:<16} pass\n", "ranges");
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point solvers and property checks on Hadamard spaces"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run experiments from JSON configs");
  run_cmd->add_option("configs", run.configs, "Config files")->required();
  run_cmd->add_option("--seed", run.seed, "Override the config seed (and HADAMARD_SEED)");
  run_cmd->add_option("--budget", run.budget, "Override the iteration budget");
  run_cmd->add_option("--output", run.output, "Override the output directory");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads for several configs")->check(CLI::PositiveNumber);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check metric axioms and CAT(0) inequalities on a space");
  verify_cmd->add_option("--space", verify.space, "Space spec, e.g. euclidean:2, hyperbolic:3, tree-random:10")
      ->required();
  verify_cmd->add_option("--trials", verify.trials, "Random tuples per property");
  verify_cmd->add_option("--eps", verify.eps, "Relative tolerance");
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--json", verify.json_out, "Also write the reports as JSON");

  std::string schedule_file;
  auto* schedules_cmd = app.add_subcommand("schedules", "Check a config's schedule conditions");
  schedules_cmd->add_option("--check", schedule_file, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(verify);
    if (*schedules_cmd) return cmd_schedules(schedule_file);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailed;
  }
  return kExitInvalid;
}
