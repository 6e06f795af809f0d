#include "specalloc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "specalloc/errors.hpp"
#include "specalloc/scenario.hpp"

namespace specalloc::cli {

namespace {

using Json = nlohmann::json;

enum class Format { Csv, Json };

// Flags exist per subcommand; unused ones simply stay empty.
struct Flags {
  std::vector<double> scalable;
  std::optional<double> ratio;
  std::optional<double> allocation;
  std::optional<double> r_max;
  std::optional<double> gamma;
  std::optional<std::string> grid;
  std::optional<std::string> r_grid;
  std::vector<double> parallel;
  std::optional<std::string> form;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::string scenario_file;
};

// Raised for user-facing argument problems that never reach the validator.
struct UsageError : Error {
  using Error::Error;
};

const std::map<std::string, std::string>& flag_names() {
  static const std::map<std::string, std::string> names{
      {"scalable_fraction", "-s/--scalable-fraction"},
      {"efficiency_ratio", "-r/--efficiency-ratio"},
      {"allocation", "-x/--allocation"},
      {"friction", "--r-max/--gamma"},
      {"friction.r_max", "--r-max"},
      {"friction.gamma", "--gamma"},
      {"x_grid", "--grid"},
      {"s_grid", "--grid"},
      {"n_grid", "--grid"},
      {"r_grid", "--r-grid"},
      {"parallel_fractions", "-p/--parallel-fraction"},
      {"form", "--form"},
  };
  return names;
}

// "analyses[0].x_grid.count" -> "--grid"
std::string flag_for_field(const std::string& field) {
  const std::string prefix = "analyses[0].";
  std::string key = field.rfind(prefix, 0) == 0 ? field.substr(prefix.size()) : field;
  while (!key.empty()) {
    if (auto it = flag_names().find(key); it != flag_names().end()) return it->second;
    const auto dot = key.rfind('.');
    if (dot == std::string::npos) break;
    key.resize(dot);
  }
  return field;
}

Json parse_grid_flag(const std::string& text, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError(flag + ": expected lo:hi:count, got '" + text + "'");
  try {
    std::size_t used = 0;
    Json grid = Json::object();
    grid["lo"] = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    grid["hi"] = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    grid["count"] = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
    return grid;
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected numeric lo:hi:count, got '" + text + "'");
  }
}

void put_ratio(Json& analysis, const Flags& f) {
  if (f.gamma) {
    if (f.ratio) throw UsageError("-r/--efficiency-ratio: cannot be combined with --gamma");
    if (!f.r_max) throw UsageError("--r-max: required when --gamma is given");
    analysis["friction"] = {{"r_max", *f.r_max}, {"gamma", *f.gamma}};
  } else {
    if (f.r_max) throw UsageError("--r-max: only valid together with --gamma");
    if (f.ratio) analysis["efficiency_ratio"] = *f.ratio;
  }
}

void put_single_scalable(Json& analysis, const Flags& f) {
  if (f.scalable.size() > 1) throw UsageError("-s/--scalable-fraction: given more than once");
  if (!f.scalable.empty()) analysis["scalable_fraction"] = f.scalable.front();
}

// Builds the scenario-schema object equivalent to the flags of `subcommand`.
Json analysis_from_flags(const std::string& subcommand, const Flags& f) {
  Json a = Json::object();
  if (subcommand == "eval") {
    a["kind"] = "eval";
    put_single_scalable(a, f);
    put_ratio(a, f);
    if (f.allocation) a["allocation"] = *f.allocation;
  } else if (subcommand == "optimize") {
    a["kind"] = "optimize";
    put_single_scalable(a, f);
    put_ratio(a, f);
  } else if (subcommand == "threshold") {
    a["kind"] = "threshold";
    put_single_scalable(a, f);
    put_ratio(a, f);
  } else if (subcommand == "time-curves") {
    a["kind"] = "time_curves";
    if (!f.scalable.empty()) a["scalable_fraction"] = f.scalable;
    put_ratio(a, f);
    if (f.grid) a["x_grid"] = parse_grid_flag(*f.grid, "--grid");
  } else if (subcommand == "locus") {
    a["kind"] = "locus";
    put_ratio(a, f);
    if (f.grid) a["s_grid"] = parse_grid_flag(*f.grid, "--grid");
  } else if (subcommand == "phase-boundary") {
    a["kind"] = "phase_boundary";
    if (f.grid) a["s_grid"] = parse_grid_flag(*f.grid, "--grid");
  } else if (subcommand == "classic") {
    a["kind"] = "classic";
    if (!f.parallel.empty()) a["parallel_fractions"] = f.parallel;
    if (f.grid) a["n_grid"] = parse_grid_flag(*f.grid, "--grid");
    if (f.form) a["form"] = *f.form;
  } else if (subcommand == "regime-grid") {
    a["kind"] = "regime_grid";
    if (f.grid) a["s_grid"] = parse_grid_flag(*f.grid, "--grid");
    if (f.r_grid) a["r_grid"] = parse_grid_flag(*f.r_grid, "--r-grid");
  }
  return a;
}

// Single table-producing analyses default to csv; everything else to json.
Format resolve_format(const Flags& f, const Scenario& scenario) {
  if (f.format) return *f.format == "json" ? Format::Json : Format::Csv;
  if (scenario.analyses.size() > 1) return Format::Json;
  for (const auto& request : scenario.analyses) {
    if (!produces_table(kind_of(request))) return Format::Json;
  }
  return Format::Csv;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("-o/--output: cannot open '" + path.string() + "' for writing");
  file << content;
  if (!file.flush()) throw UsageError("-o/--output: failed writing '" + path.string() + "'");
}

// out.csv -> out_0.csv, out_1.csv, ...
std::filesystem::path indexed_path(const std::filesystem::path& base, std::size_t index) {
  std::filesystem::path p = base;
  p.replace_filename(base.stem().string() + "_" + std::to_string(index) + base.extension().string());
  return p;
}

void emit(const Scenario& scenario, const Flags& f, std::ostream& out) {
  const std::vector<AnalysisResult> results = run_scenario(scenario);
  const Format format = resolve_format(f, scenario);

  if (format == Format::Json) {
    const std::string doc = emit_json(results);
    if (f.output) {
      write_file(*f.output, doc);
    } else {
      out << doc;
    }
    return;
  }

  std::vector<std::string> documents;
  for (const auto& result : results) documents.push_back(emit_csv(as_table(result)));
  if (documents.size() == 1) {
    if (f.output) {
      write_file(*f.output, documents.front());
    } else {
      out << documents.front();
    }
    return;
  }
  if (!f.output) {
    throw UsageError("-o/--output: required for csv output of a multi-analysis scenario");
  }
  for (std::size_t i = 0; i < documents.size(); ++i) write_file(indexed_path(*f.output, i), documents[i]);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("scenario file: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

void add_output_options(CLI::App* sub, Flags& f) {
  sub->add_option("-o,--output", f.output, "Write results to PATH instead of standard output");
  sub->add_option("--format", f.format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_ratio_options(CLI::App* sub, Flags& f) {
  sub->add_option("-r,--efficiency-ratio", f.ratio, "Efficiency ratio R of specialized hardware");
  sub->add_option("--r-max", f.r_max, "Peak efficiency ratio under memory friction");
  sub->add_option("--gamma", f.gamma, "Memory-friction coefficient; enables the friction model");
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Optimal allocation of a hardware budget to specialized logic", "specalloc"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Normalized execution time T(x)");
  eval->add_option("-s,--scalable-fraction", f.scalable, "Value-scalable fraction S")->expected(1);
  add_ratio_options(eval, f);
  eval->add_option("-x,--allocation", f.allocation, "Specialization fraction x");

  auto* optimize = app.add_subcommand("optimize", "Optimal allocation x* and its regime");
  optimize->add_option("-s,--scalable-fraction", f.scalable, "Value-scalable fraction S")->expected(1);
  add_ratio_options(optimize, f);

  auto* threshold = app.add_subcommand("threshold", "Collapse threshold S_c and critical ratio R_c");
  threshold->add_option("-s,--scalable-fraction", f.scalable, "Value-scalable fraction S")->expected(1);
  add_ratio_options(threshold, f);

  auto* curves = app.add_subcommand("time-curves", "T(x) over an allocation grid for several S");
  curves->add_option("-s,--scalable-fraction", f.scalable, "Value-scalable fraction (repeatable)")
      ->take_all();
  add_ratio_options(curves, f);
  curves->add_option("--grid", f.grid, "Allocation grid lo:hi:count");

  auto* locus = app.add_subcommand("locus", "Optimal locus x*(S), T(x*(S))");
  add_ratio_options(locus, f);
  locus->add_option("--grid", f.grid, "Scalable-fraction grid lo:hi:count");

  auto* boundary = app.add_subcommand("phase-boundary", "Critical ratio R_c(S) over an S grid");
  boundary->add_option("--grid", f.grid, "Scalable-fraction grid lo:hi:count");

  auto* classic = app.add_subcommand("classic", "Amdahl and Gustafson curves over N");
  classic->add_option("-p,--parallel-fraction", f.parallel, "Parallel fraction P (repeatable)")
      ->take_all();
  classic->add_option("--grid", f.grid, "Processor-count grid lo:hi:count");
  classic->add_option("--form", f.form, "speedup or time")->check(CLI::IsMember({"speedup", "time"}));

  auto* regimes = app.add_subcommand("regime-grid", "Regime label and x* over an (S, R) grid");
  regimes->add_option("--grid", f.grid, "Scalable-fraction grid lo:hi:count");
  regimes->add_option("--r-grid", f.r_grid, "Efficiency-ratio grid lo:hi:count");

  auto* scenario = app.add_subcommand("scenario", "Scenario files");
  scenario->require_subcommand(1);
  auto* scenario_run = scenario->add_subcommand("run", "Run every analysis of a scenario file");
  scenario_run->add_option("file", f.scenario_file, "Scenario JSON document")->required();

  for (auto* sub : {eval, optimize, threshold, curves, locus, boundary, classic, regimes, scenario_run}) {
    add_output_options(sub, f);
  }

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    if (name == "scenario") {
      emit(parse_scenario(read_file(f.scenario_file)), f, out);
    } else {
      const Json doc = {{"name", "cli"}, {"analyses", Json::array({analysis_from_flags(name, f)})}};
      emit(parse_scenario(doc.dump()), f, out);
    }
  } catch (const ValidationError& e) {
    if (name == "scenario") {
      err << "error: " << e.what() << '\n';
    } else {
      err << "error: " << flag_for_field(e.field()) << ": " << e.what() << '\n';
    }
    return kExitUsage;
  } catch (const DegenerateInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace specalloc::cli
