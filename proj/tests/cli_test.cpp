#include "specalloc/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace specalloc::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "specalloc");
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("specalloc_cli_" + std::to_string(counter_++) + "_" +
                                                  std::to_string(reinterpret_cast<std::uintptr_t>(this)))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name, const std::string& content = "") const {
    const fs::path p = path_ / name;
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

TEST(CliTest, OptimizeInterior) {
  const auto r = invoke({"optimize", "-s", "0.2", "-r", "10"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_TRUE(r.err.empty());
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc[0]["results"]["regime"], "interior");
  EXPECT_NE(r.out.find(R"("x_star":0.333333333)"), std::string::npos);
}

TEST(CliTest, Threshold) {
  const auto r = invoke({"threshold", "-r", "10"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out, R"([{"kind":"threshold","parameters":{"efficiency_ratio":10},"results":{"s_c":0.9}}])"
                   "\n");
  const auto both = invoke({"threshold", "--scalable-fraction", "0.95"});
  EXPECT_NE(both.out.find(R"("r_c":20)"), std::string::npos);
}

TEST(CliTest, DegenerateOptimize) {
  const auto r = invoke({"optimize", "-s", "0", "-r", "10"});
  EXPECT_EQ(r.status, kExitDegenerate);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("degenerate scalable_fraction"), std::string::npos);
}

TEST(CliTest, UsageErrorsNameTheFlag) {
  const auto range = invoke({"optimize", "-s", "1.2", "-r", "10"});
  EXPECT_EQ(range.status, kExitUsage);
  EXPECT_TRUE(range.out.empty());
  EXPECT_NE(range.err.find("--scalable-fraction"), std::string::npos);
  EXPECT_NE(range.err.find("1.2 outside [0,1]"), std::string::npos);

  const auto missing = invoke({"optimize", "-s", "0.2"});
  EXPECT_EQ(missing.status, kExitUsage);
  EXPECT_NE(missing.err.find("--efficiency-ratio"), std::string::npos);

  const auto gamma = invoke({"optimize", "-s", "0.2", "--gamma", "0.1"});
  EXPECT_EQ(gamma.status, kExitUsage);
  EXPECT_NE(gamma.err.find("--r-max"), std::string::npos);

  const auto grid = invoke({"locus", "-r", "10", "--grid", "0:0.5"});
  EXPECT_EQ(grid.status, kExitUsage);
  EXPECT_NE(grid.err.find("--grid"), std::string::npos);

  const auto count = invoke({"locus", "-r", "10", "--grid", "0:0.5:1"});
  EXPECT_EQ(count.status, kExitUsage);
  EXPECT_NE(count.err.find("--grid"), std::string::npos);

  const auto unknown = invoke({"optimize", "-s", "0.2", "-r", "10", "--bogus"});
  EXPECT_EQ(unknown.status, kExitUsage);
  EXPECT_TRUE(unknown.out.empty());
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos);

  const auto form = invoke({"classic", "-p", "0.5", "--form", "log"});
  EXPECT_EQ(form.status, kExitUsage);
  EXPECT_NE(form.err.find("--form"), std::string::npos);

  EXPECT_EQ(invoke({}).status, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).status, kExitUsage);
}

TEST(CliTest, DefaultFormats) {
  const auto csv = invoke({"phase-boundary", "--grid", "0:0.9:10"});
  EXPECT_EQ(csv.status, kExitOk);
  EXPECT_EQ(csv.out.rfind("abscissa,r_c\n0,1\n", 0), 0u);
  EXPECT_NE(csv.out.find("\n0.9,10\n"), std::string::npos);

  const auto json = invoke({"phase-boundary", "--grid", "0:0.9:10", "--format", "json"});
  EXPECT_TRUE(nlohmann::json::parse(json.out).is_array());

  const auto scalar_csv = invoke({"eval", "-s", "0.2", "-r", "10", "-x", "0", "--format", "csv"});
  EXPECT_EQ(scalar_csv.out, "abscissa,time\n0,1\n");
}

TEST(CliTest, FrictionFlags) {
  const auto r = invoke({"eval", "-s", "0.2", "--r-max", "10", "--gamma", "0.1", "-x", "0.333333333333333333"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find(R"("time":0.552631579)"), std::string::npos);
  const auto locus = invoke({"locus", "--r-max", "10", "--gamma", "0.1", "--grid", "0.2:0.95:4"});
  EXPECT_EQ(locus.status, kExitOk);
  EXPECT_NE(locus.out.find("\n0.95,0,1\n"), std::string::npos);
  EXPECT_EQ(invoke({"locus", "-r", "10", "--r-max", "10"}).status, kExitUsage);
}

TEST(CliTest, TimeCurvesRepeatableScalable) {
  const auto r = invoke({"time-curves", "-r", "10", "-s", "0.2", "-s", "0.95", "--grid", "0:0.5:3"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "abscissa,S=0.2,S=0.95");
  const auto listed = invoke({"time-curves", "-r", "10", "-s", "0.2", "0.95", "--grid", "0:0.5:3"});
  EXPECT_EQ(listed.out, r.out);
}

TEST(CliTest, OutputFile) {
  TempDir dir;
  const fs::path target = dir.file("locus.csv");
  const auto r = invoke({"locus", "-r", "10", "-o", target.string()});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp(target);
  EXPECT_EQ(csv, invoke({"locus", "-r", "10"}).out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
}

// Each single-analysis scenario and its flag spelling must emit the same bytes.
TEST(CliTest, FlagScenarioEquivalence) {
  struct Case {
    std::string analysis;
    std::vector<std::string> flags;
  };
  const std::vector<Case> cases = {
      {R"({"kind":"eval","scalable_fraction":0.2,"efficiency_ratio":10,"allocation":0.25})",
       {"eval", "-s", "0.2", "-r", "10", "-x", "0.25"}},
      {R"({"kind":"eval","scalable_fraction":0.3,"friction":{"r_max":12,"gamma":0.25},"allocation":0.1})",
       {"eval", "-s", "0.3", "--r-max", "12", "--gamma", "0.25", "-x", "0.1"}},
      {R"({"kind":"optimize","scalable_fraction":0.5,"efficiency_ratio":10})", {"optimize", "-s", "0.5", "-r", "10"}},
      {R"({"kind":"optimize","scalable_fraction":0.2,"friction":{"r_max":10,"gamma":0.1}})",
       {"optimize", "-s", "0.2", "--r-max", "10", "--gamma", "0.1"}},
      {R"({"kind":"threshold","scalable_fraction":0.9,"efficiency_ratio":10})",
       {"threshold", "-s", "0.9", "-r", "10"}},
      {R"({"kind":"time_curves","efficiency_ratio":10,"scalable_fraction":[0.2,0.5],"x_grid":{"lo":0,"hi":0.65,"count":30}})",
       {"time-curves", "-r", "10", "-s", "0.2", "-s", "0.5", "--grid", "0:0.65:30"}},
      {R"({"kind":"locus","efficiency_ratio":10})", {"locus", "-r", "10"}},
      {R"({"kind":"phase_boundary"})", {"phase-boundary"}},
      {R"({"kind":"classic","parallel_fractions":[0.5,0.9,0.99],"form":"time"})",
       {"classic", "-p", "0.5", "-p", "0.9", "-p", "0.99", "--form", "time"}},
      {R"({"kind":"regime_grid","s_grid":{"lo":0,"hi":0.9,"count":10},"r_grid":{"lo":1,"hi":20,"count":5}})",
       {"regime-grid", "--grid", "0:0.9:10", "--r-grid", "1:20:5"}},
  };
  TempDir dir;
  int index = 0;
  for (const auto& c : cases) {
    const fs::path file =
        dir.file("case" + std::to_string(index++) + ".json", R"({"name":"case","analyses":[)" + c.analysis + "]}");
    for (const std::string format : {"", "csv", "json"}) {
      std::vector<std::string> via_file = {"scenario", "run", file.string()};
      std::vector<std::string> via_flags = c.flags;
      if (!format.empty()) {
        via_file.insert(via_file.end(), {"--format", format});
        via_flags.insert(via_flags.end(), {"--format", format});
      }
      const auto a = invoke(via_file);
      const auto b = invoke(via_flags);
      EXPECT_EQ(a.status, kExitOk) << c.analysis << " " << a.err;
      EXPECT_EQ(b.status, kExitOk) << c.analysis << " " << b.err;
      EXPECT_EQ(a.out, b.out) << c.analysis << " format=" << format;
    }
  }
}

TEST(CliTest, ScenarioRunMultipleAnalyses) {
  TempDir dir;
  const fs::path doc = dir.file("multi.json", R"({"name":"multi","analyses":[
      {"kind":"phase_boundary","s_grid":{"lo":0,"hi":0.9,"count":4}},
      {"kind":"locus","efficiency_ratio":10,"s_grid":{"lo":0.2,"hi":0.8,"count":3}}]})");
  const auto json = invoke({"scenario", "run", doc.string()});
  EXPECT_EQ(json.status, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 2u);

  EXPECT_EQ(invoke({"scenario", "run", doc.string(), "--format", "csv"}).status, kExitUsage);

  const fs::path out = dir.path() / "run.csv";
  const auto csv = invoke({"scenario", "run", doc.string(), "--format", "csv", "-o", out.string()});
  EXPECT_EQ(csv.status, kExitOk);
  EXPECT_EQ(slurp(dir.path() / "run_0.csv").rfind("abscissa,r_c\n", 0), 0u);
  EXPECT_EQ(slurp(dir.path() / "run_1.csv"),
            "abscissa,x_star,time\n0.2,0.333333333,0.5\n0.5,0.166666667,0.8\n0.8,0.0476190476,0.98\n");
}

TEST(CliTest, ScenarioErrors) {
  TempDir dir;
  const auto missing = invoke({"scenario", "run", (dir.path() / "nope.json").string()});
  EXPECT_EQ(missing.status, kExitUsage);
  EXPECT_TRUE(missing.out.empty());

  const fs::path bad = dir.file("bad.json", R"({"name":"b","analyses":[{"kind":"optimize","scalable_fraction":2,"efficiency_ratio":10}]})");
  const auto invalid = invoke({"scenario", "run", bad.string()});
  EXPECT_EQ(invalid.status, kExitUsage);
  EXPECT_NE(invalid.err.find("analyses[0].scalable_fraction"), std::string::npos);

  const fs::path broken = dir.file("broken.json", "{\"name\":");
  EXPECT_EQ(invoke({"scenario", "run", broken.string()}).status, kExitUsage);

  const fs::path degenerate =
      dir.file("deg.json", R"({"name":"d","analyses":[{"kind":"optimize","scalable_fraction":0,"efficiency_ratio":10}]})");
  EXPECT_EQ(invoke({"scenario", "run", degenerate.string()}).status, kExitDegenerate);
}

TEST(CliTest, HelpGoesToOutput) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("optimize"), std::string::npos);
}

// The installed binary: stdout carries only the document, stderr only diagnostics.
TEST(CliBinaryTest, StreamPurity) {
  TempDir dir;
  const fs::path out = dir.path() / "out.txt";
  const fs::path err = dir.path() / "err.txt";
  const std::string cli = SPECALLOC_CLI_PATH;
  auto sh = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(sh("optimize -s 0.5 -r 10"), 0);
  EXPECT_TRUE(slurp(err).empty());
  EXPECT_TRUE(nlohmann::json::parse(slurp(out)).is_array());

  EXPECT_EQ(sh("locus -r 10"), 0);
  EXPECT_TRUE(slurp(err).empty());
  EXPECT_EQ(slurp(out).rfind("abscissa,x_star,time\n", 0), 0u);

  EXPECT_EQ(sh("optimize -s 0 -r 10"), 3);
  EXPECT_TRUE(slurp(out).empty());
  EXPECT_FALSE(slurp(err).empty());

  EXPECT_EQ(sh("optimize -s 5 -r 10"), 2);
  EXPECT_TRUE(slurp(out).empty());
}

}  // namespace
}  // namespace specalloc::cli
