#include "hadamard/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hadamard/geometry.hpp"
#include "hadamard/json_io.hpp"
#include "hadamard/sampling.hpp"

namespace hadamard {

using nlohmann::json;

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Implicit ? "implicit" : "explicit";
}

namespace {

const std::set<std::string> kConfigKeys = {
    "name",     "space",      "convex_set", "mapping", "algorithm",  "schedule",
    "basepoint", "x0",        "budget",     "tolerances", "seed",    "output_dir",
    "reference_point",
};

std::uint64_t parse_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return j.get<std::uint64_t>();
  throw ConfigError(path, "expected a nonnegative integer");
}

Tolerances parse_tolerances(const json& j) {
  Tolerances t;
  if (!j.is_object()) throw ConfigError("/tolerances", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = "/tolerances/" + key;
    if (key == "outer") {
      t.outer = json_io::require_number(value, path);
      if (t.outer < 0.0) throw ConfigError(path, "must be nonnegative");
    } else if (key == "inner") {
      t.inner = json_io::require_number(value, path);
      if (!(t.inner > 0.0)) throw ConfigError(path, "must be positive");
    } else if (key == "max_inner") {
      const long v = json_io::require_integer(value, path);
      if (v < 1 || v > 2'000'000'000L) throw ConfigError(path, "must lie in [1, 2e9]");
      t.max_inner = static_cast<int>(v);
    } else if (key == "certificate_probes") {
      const long v = json_io::require_integer(value, path);
      if (v < 1 || v > 10'000'000L) throw ConfigError(path, "must lie in [1, 1e7]");
      t.certificate_probes = static_cast<int>(v);
    } else {
      throw ConfigError(path, "unknown field");
    }
  }
  return t;
}

void validate_schedule_for(const ExperimentConfig& c) {
  if (c.algorithm == Algorithm::Explicit) {
    if (!c.schedule.beta) throw ConfigError("/schedule/beta", "explicit algorithm needs a beta sequence");
    const auto report = validate_schedules(c.schedule, std::max(c.budget, 1000L));
    if (!report.condition_i.pass)
      throw ConfigError("/schedule/alpha", "fails condition (i): " + report.condition_i.evidence);
    if (!report.condition_ii.pass)
      throw ConfigError("/schedule/beta", "fails condition (ii): " + report.condition_ii.evidence);
    if (!report.condition_iii.pass)
      throw ConfigError("/schedule/perturbation", "fails condition (iii): " + report.condition_iii.evidence);
    if (auto bad = check_schedule_ranges(c.schedule, 0, c.budget)) throw ConfigError("/schedule", *bad);
  } else {
    if (c.schedule.beta) throw ConfigError("/schedule/beta", "the implicit algorithm takes no beta sequence");
    const auto cond = validate_implicit_schedule(c.schedule, std::max(c.budget, 1000L));
    if (!cond.pass) throw ConfigError("/schedule", cond.evidence);
    if (auto bad = check_schedule_ranges(c.schedule, 1, c.budget)) throw ConfigError("/schedule", *bad);
  }
}

SolverOptions solver_options(const ExperimentConfig& c) {
  SolverOptions o;
  o.budget = c.budget;
  o.outer_tol = c.tolerances.outer;
  o.inner_tol = c.tolerances.inner;
  o.max_inner = c.tolerances.max_inner;
  o.reference = c.reference_point;
  o.seed = c.seed;
  return o;
}

std::string csv_real(const std::optional<double>& v) {
  return v ? fmt::format("{:.17g}", *v) : std::string();
}

// Minimal scanner used only to map a JSON pointer back to a source line.
class PointerLocator {
 public:
  explicit PointerLocator(const std::string& text) : s_(text) {}

  std::size_t find(const std::vector<std::string>& tokens) {
    std::size_t pos = skip_ws(0);
    for (const auto& token : tokens) {
      if (pos >= s_.size()) return std::string::npos;
      if (s_[pos] == '{') {
        pos = skip_ws(pos + 1);
        bool found = false;
        while (pos < s_.size() && s_[pos] == '"') {
          const std::size_t key_end = skip_string(pos);
          const std::string key = s_.substr(pos + 1, key_end - pos - 2);
          pos = skip_ws(key_end);
          if (pos >= s_.size() || s_[pos] != ':') return std::string::npos;
          pos = skip_ws(pos + 1);
          if (key == token) {
            found = true;
            break;
          }
          pos = skip_ws(skip_value(pos));
          if (pos < s_.size() && s_[pos] == ',') pos = skip_ws(pos + 1);
        }
        if (!found) return std::string::npos;
      } else if (s_[pos] == '[') {
        char* end = nullptr;
        const long index = std::strtol(token.c_str(), &end, 10);
        if (token.empty() || *end != '\0' || index < 0) return std::string::npos;
        pos = skip_ws(pos + 1);
        for (long i = 0; i < index; ++i) {
          if (pos >= s_.size() || s_[pos] == ']') return std::string::npos;
          pos = skip_ws(skip_value(pos));
          if (pos < s_.size() && s_[pos] == ',') pos = skip_ws(pos + 1);
        }
        if (pos >= s_.size() || s_[pos] == ']') return std::string::npos;
      } else {
        return std::string::npos;
      }
    }
    return pos;
  }

 private:
  std::size_t skip_ws(std::size_t p) const {
    while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\n' || s_[p] == '\r' || s_[p] == '\t')) ++p;
    return p;
  }

  std::size_t skip_string(std::size_t p) const {
    ++p;
    while (p < s_.size() && s_[p] != '"') p += s_[p] == '\\' ? 2 : 1;
    return std::min(p + 1, s_.size());
  }

  std::size_t skip_value(std::size_t p) const {
    if (p >= s_.size()) return p;
    if (s_[p] == '"') return skip_string(p);
    if (s_[p] == '{' || s_[p] == '[') {
      int depth = 0;
      while (p < s_.size()) {
        const char c = s_[p];
        if (c == '"') {
          p = skip_string(p);
          continue;
        }
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') {
          if (--depth == 0) return p + 1;
        }
        ++p;
      }
      return p;
    }
    while (p < s_.size() && s_[p] != ',' && s_[p] != '}' && s_[p] != ']' && s_[p] != ' ' &&
           s_[p] != '\n' && s_[p] != '\r' && s_[p] != '\t')
      ++p;
    return p;
  }

  const std::string& s_;
};

std::vector<std::string> split_pointer(const std::string& pointer) {
  std::vector<std::string> out;
  if (pointer.empty() || pointer == "/") return out;
  std::size_t start = 1;
  while (start <= pointer.size()) {
    const std::size_t end = pointer.find('/', start);
    std::string token = pointer.substr(start, end == std::string::npos ? std::string::npos : end - start);
    for (std::size_t i; (i = token.find("~1")) != std::string::npos;) token.replace(i, 2, "/");
    for (std::size_t i; (i = token.find("~0")) != std::string::npos;) token.replace(i, 2, "~");
    out.push_back(std::move(token));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("/", "config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!kConfigKeys.count(key)) throw ConfigError("/" + key, "unknown field");

  ExperimentConfig c;
  if (doc.contains("name")) {
    c.name = json_io::require_string(doc["name"], "/name");
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos)
      throw ConfigError("/name", "name must be a nonempty file stem");
  }
  c.space = json_io::decode_space(json_io::require_field(doc, "space", ""), "/space");
  const Space space = make_space(c.space);
  c.convex_set = json_io::decode_set(space, json_io::require_field(doc, "convex_set", ""), "/convex_set");
  c.mapping = json_io::decode_mapping(space, json_io::require_field(doc, "mapping", ""), "/mapping");

  const auto algorithm = json_io::require_string(json_io::require_field(doc, "algorithm", ""), "/algorithm");
  if (algorithm == "implicit")
    c.algorithm = Algorithm::Implicit;
  else if (algorithm == "explicit")
    c.algorithm = Algorithm::Explicit;
  else
    throw ConfigError("/algorithm", "expected \"implicit\" or \"explicit\"");

  c.budget = json_io::require_integer(json_io::require_field(doc, "budget", ""), "/budget");
  if (c.budget < 1) throw ConfigError("/budget", "budget must be at least 1");
  if (doc.contains("tolerances")) c.tolerances = parse_tolerances(doc["tolerances"]);
  if (doc.contains("seed")) c.seed = parse_seed(doc["seed"], "/seed");
  if (doc.contains("output_dir")) c.output_dir = json_io::require_string(doc["output_dir"], "/output_dir");

  c.basepoint = doc.contains("basepoint") ? json_io::decode_point(space, doc["basepoint"], "/basepoint")
                                          : origin(space);
  if (doc.contains("x0")) c.x0 = json_io::decode_point(space, doc["x0"], "/x0");
  if (doc.contains("reference_point"))
    c.reference_point = json_io::decode_point(space, doc["reference_point"], "/reference_point");

  if (c.algorithm == Algorithm::Explicit) {
    if (!c.x0) throw ConfigError("/x0", "the explicit algorithm needs a starting point");
    if (!contains(space, c.convex_set, *c.x0, membership_tolerance(space, c.convex_set, *c.x0)))
      throw ConfigError("/x0", "starting point must lie in the convex set");
  }

  if (doc.contains("schedule"))
    c.schedule = json_io::decode_schedule(doc["schedule"], "/schedule");
  else
    c.schedule = c.algorithm == Algorithm::Implicit ? default_implicit_schedule() : default_explicit_schedule();
  validate_schedule_for(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json out = {{"name", c.name},
              {"space", json_io::encode(c.space)},
              {"convex_set", json_io::encode(c.convex_set)},
              {"mapping", json_io::encode(c.mapping)},
              {"algorithm", to_string(c.algorithm)},
              {"schedule", json_io::encode(c.schedule)},
              {"basepoint", json_io::encode(c.basepoint)},
              {"budget", c.budget},
              {"tolerances",
               {{"outer", c.tolerances.outer},
                {"inner", c.tolerances.inner},
                {"max_inner", c.tolerances.max_inner},
                {"certificate_probes", c.tolerances.certificate_probes}}},
              {"seed", c.seed},
              {"output_dir", c.output_dir}};
  if (c.x0) out["x0"] = json_io::encode(*c.x0);
  if (c.reference_point) out["reference_point"] = json_io::encode(*c.reference_point);
  return out;
}

ConfigFileError::ConfigFileError(std::string file, int line, std::string pointer, const std::string& message)
    : Error(fmt::format("{}:{}: {}{}", file, line, pointer.empty() ? "" : pointer + ": ", message)),
      file_(std::move(file)),
      line_(line),
      pointer_(std::move(pointer)) {}

int locate_pointer(const std::string& text, const std::string& pointer) {
  PointerLocator locator(text);
  auto tokens = split_pointer(pointer);
  std::size_t pos = std::string::npos;
  // Fall back to the nearest enclosing value that exists.
  while (true) {
    pos = locator.find(tokens);
    if (pos != std::string::npos || tokens.empty()) break;
    tokens.pop_back();
  }
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& file) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
    throw ConfigFileError(file, line, "", "invalid JSON");
  }
  try {
    return parse_config(doc);
  } catch (const ConfigError& e) {
    std::string message = e.what();
    if (!e.path().empty() && message.rfind(e.path() + ": ", 0) == 0) message.erase(0, e.path().size() + 2);
    throw ConfigFileError(file, locate_pointer(text, e.path()), e.path(), message);
  } catch (const DomainError& e) {
    throw ConfigFileError(file, 1, "", e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigFileError(file.string(), 1, "", "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), file.string());
}

void apply_seed_environment(ExperimentConfig& config) {
  const char* env = std::getenv("HADAMARD_SEED");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno != 0 || env[0] == '-')
    throw ConfigError("HADAMARD_SEED", "expected a nonnegative integer");
  config.seed = v;
}

IterationTrace solve(const ExperimentConfig& c) {
  const Space space = make_space(c.space);
  const Basepoint base{c.basepoint};
  const auto options = solver_options(c);
  if (c.algorithm == Algorithm::Implicit)
    return run_implicit(space, c.convex_set, c.mapping, c.schedule, base, c.x0, options);
  return run_explicit(space, c.convex_set, c.mapping, c.schedule, base, *c.x0, options);
}

std::string trace_csv(const IterationTrace& trace) {
  std::string out = "n,fixed_residual,step,z_residual,ref_distance,qx_inner\n";
  for (const auto& r : trace.rows)
    out += fmt::format("{},{:.17g},{:.17g},{},{},{}\n", r.n, r.fixed_residual, r.step,
                       csv_real(r.z_residual), csv_real(r.ref_distance), csv_real(r.qx_inner));
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.trace = solve(c);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Space space = make_space(c.space);
  const Basepoint base{c.basepoint};
  const auto& trace = result.trace;
  const auto& last = trace.rows.back();

  json certificates = json::object();
  if (trace.last_projection_input && trace.last_projection_output)
    certificates["projection"] =
        characterization_residual(space, c.convex_set, *trace.last_projection_input,
                                  *trace.last_projection_output, c.tolerances.certificate_probes, c.seed);
  if (auto fixed = fixed_point_set(space, c.mapping))
    certificates["nearest_fixed_point"] = nearest_fixed_point_residual(
        space, trace.final_point(), base, *fixed, c.tolerances.certificate_probes, c.seed);

  json residuals = {{"fixed_residual", last.fixed_residual}, {"step", last.step}};
  residuals["z_residual"] = last.z_residual ? json(*last.z_residual) : json(nullptr);
  residuals["ref_distance"] = last.ref_distance ? json(*last.ref_distance) : json(nullptr);

  result.exit_code = trace.converged() ? 0 : 1;
  result.summary = {{"name", c.name},
                    {"algorithm", to_string(c.algorithm)},
                    {"status", to_string(trace.status)},
                    {"converged", trace.converged()},
                    {"rows", trace.rows.size()},
                    {"final", json_io::encode(trace.final_point())},
                    {"final_residuals", residuals},
                    {"certificates", certificates},
                    {"wall_time_seconds", wall},
                    {"config", config_to_json(c)}};

  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  result.trace_path = dir / (c.name + ".trace.csv");
  result.summary_path = dir / (c.name + ".summary.json");
  {
    std::ofstream out(result.trace_path, std::ios::binary);
    out << trace_csv(trace);
    if (!out) throw Error("cannot write " + result.trace_path.string());
  }
  {
    std::ofstream out(result.summary_path, std::ios::binary);
    out << result.summary.dump(2) << '\n';
    if (!out) throw Error("cannot write " + result.summary_path.string());
  }
  return result;
}

namespace {

int spec_int(const std::string& text, const std::string& spec, long lo, long hi) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v < lo || v > hi)
    throw ConfigError("", fmt::format("space spec '{}': expected an integer in [{}, {}], got '{}'", spec, lo, hi, text));
  return static_cast<int>(v);
}

double spec_real(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !(v > 0.0) || !std::isfinite(v))
    throw ConfigError("", fmt::format("space spec '{}': expected a positive number, got '{}'", spec, text));
  return v;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(':', start);
    out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

}  // namespace

SpaceDescriptor parse_space_spec(const std::string& spec) {
  if (spec.empty()) throw ConfigError("", "empty space spec");
  if (spec.front() == '{') {
    json doc;
    try {
      doc = json::parse(spec);
    } catch (const json::parse_error&) {
      throw ConfigError("", "space spec is not valid JSON");
    }
    return json_io::decode_space(doc);
  }
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open " + spec);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_space_spec(buffer.str());
  }
  if (spec == "corrupted-demo") return SpaceDescriptor::distorted_euclidean(2, 1.5);
  if (spec.rfind("product:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const auto plus = rest.find('+');
    if (plus == std::string::npos) throw ConfigError("", "space spec '" + spec + "': expected product:A+B");
    auto out = SpaceDescriptor::product(parse_space_spec(rest.substr(0, plus)), parse_space_spec(rest.substr(plus + 1)));
    try {
      make_space(out);
    } catch (const DomainError& e) {
      throw ConfigError("", e.what());
    }
    return out;
  }
  const auto parts = split_colon(spec);
  const auto& kind = parts[0];
  if (kind == "euclidean" && parts.size() == 2) return SpaceDescriptor::euclidean(spec_int(parts[1], spec, 1, 1 << 16));
  if (kind == "hyperbolic" && parts.size() == 2) return SpaceDescriptor::hyperbolic(spec_int(parts[1], spec, 1, 1 << 16));
  if (kind == "tree-star" && parts.size() == 3)
    return SpaceDescriptor::tree(star_tree(spec_int(parts[1], spec, 1, 1 << 20), spec_real(parts[2], spec)));
  if (kind == "tree-random" && (parts.size() == 2 || parts.size() == 3)) {
    const int edges = spec_int(parts[1], spec, 1, 1 << 20);
    const std::uint64_t seed = parts.size() == 3 ? static_cast<std::uint64_t>(spec_int(parts[2], spec, 0, 1L << 30)) : 0;
    return SpaceDescriptor::tree(random_tree(edges, seed));
  }
  throw ConfigError("", "unrecognized space spec '" + spec + "'");
}

}  // namespace hadamard
