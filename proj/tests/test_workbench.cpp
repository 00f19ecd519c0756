#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arw/workbench/run.hpp"
#include "config_fuzz.hpp"

namespace wb = arw::workbench;
namespace fs = std::filesystem;
using wb::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> shipped_configs() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(ARW_SOURCE_DIR) / "tools" / "configs"))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

arw::Error config_error(const std::string& text) {
  try {
    auto cfg = wb::parse_config_text(text);
    wb::validate(cfg);
  } catch (const arw::Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error for " << text;
  return arw::Error(arw::ErrorKind::kConfig, "none");
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kKoszulSweep = R"({
  "ring": {"variables": ["x", "y"]},
  "task": "syzygetic-sweep",
  "params": {
    "i_min": 0, "i_max": 2, "n_max": 6,
    "module_family": {"kind": "quotient",
                      "ideals": {"kind": "explicit", "ideals": [["x^2", "y^2"], ["x^3", "y^3"]]}},
    "ideal_family": {"kind": "explicit", "ideals": [["x", "y"]]}
  },
  "seed": 3
})";

}  // namespace

TEST(Config, RoundTripsCorpusAndShippedConfigs) {
  std::vector<std::string> texts = arw_fuzz::seed_corpus();
  for (const auto& p : shipped_configs()) texts.push_back(slurp(p));
  ASSERT_GE(texts.size(), 18u);
  for (const auto& t : texts) {
    auto a = wb::parse_config_text(t);
    auto b = wb::parse_config(wb::to_json(a));
    EXPECT_EQ(a, b) << t;
    EXPECT_EQ(wb::to_json(a), wb::to_json(b));
  }
}

TEST(Config, ShippedConfigsValidate) {
  for (const auto& p : shipped_configs()) EXPECT_NO_THROW(wb::validate(wb::parse_config_text(slurp(p)))) << p;
}

TEST(Config, DefaultsAreFilledIn) {
  auto c = wb::parse_config_text(R"({"ring": {"variables": ["x"]}, "task": "bounds-table"})");
  EXPECT_EQ(c.ring.field, "32003");
  EXPECT_EQ(c.params.n_max, 6);
  EXPECT_EQ(c.params.jobs, 0);
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.output.json, "report.json");
  EXPECT_FALSE(c.output.timing);
}

TEST(Config, UnknownKeysAreRejectedWithPath) {
  auto e = config_error(R"({"ring": {"variables": ["x"], "colour": 1}, "task": "bounds-table"})");
  EXPECT_EQ(e.kind(), arw::ErrorKind::kConfig);
  EXPECT_EQ(e.location(), "ring.colour");
  e = config_error(R"({"ring": {"variables": ["x"]}, "task": "bounds-table", "params": {"nmax": 3}})");
  EXPECT_EQ(e.location(), "params.nmax");
}

TEST(Config, SchemaViolations) {
  EXPECT_EQ(config_error(R"({"task": "bounds-table"})").location(), "ring");
  EXPECT_EQ(config_error(R"({"ring": {"variables": ["x"]}, "task": "nope"})").location(), "task");
  EXPECT_EQ(config_error(R"({"ring": {"variables": ["x"]}, "task": "bounds-table", "params": {"n_max": 0}})")
                .location(),
            "params.n_max");
  EXPECT_EQ(config_error(R"({"ring": {"variables": ["x"]}, "task": "bounds-table", "seed": -1})").location(),
            "seed");
  EXPECT_EQ(config_error(R"({"ring": {"variables": ["x"], "field": "12"}, "task": "bounds-table"})").location(),
            "ring.field");
  EXPECT_EQ(config_error("{\"ring\": ").kind(), arw::ErrorKind::kParse);
  EXPECT_EQ(config_error("[1, 2]").kind(), arw::ErrorKind::kConfig);
}

TEST(Config, MalformedPolynomialNamesItsLine) {
  const std::string text = R"({
  "ring": {"variables": ["x", "y"]},
  "task": "ar-number",
  "params": {
    "ideal": ["x",
              "x^^2"],
    "module": {"kind": "free"}
  }
})";
  auto e = config_error(text);
  EXPECT_EQ(e.kind(), arw::ErrorKind::kParse);
  EXPECT_EQ(e.location(), "params.ideal[1]");
  EXPECT_NE(wb::describe_error(e, text).find("(line 6)"), std::string::npos) << wb::describe_error(e, text);
}

TEST(Config, UndefinedVariableAndInhomogeneousInputs) {
  auto e = config_error(
      R"({"ring": {"variables": ["x", "y"]}, "task": "koszul", "params": {"sequence": ["x", "z"]}})");
  EXPECT_EQ(e.location(), "params.sequence[1]");
  e = config_error(R"({"ring": {"variables": ["x", "y"]}, "task": "ar-number",
                       "params": {"ideal": ["x+y^2"], "module": {"kind": "free"}}})");
  EXPECT_EQ(e.kind(), arw::ErrorKind::kNotHomogeneous);
  EXPECT_EQ(e.location(), "params.ideal");
}

TEST(Seeds, StreamsAreLabelledAndStable) {
  EXPECT_EQ(wb::derive_seed(7, "a"), wb::derive_seed(7, "a"));
  EXPECT_NE(wb::derive_seed(7, "a"), wb::derive_seed(7, "b"));
  EXPECT_NE(wb::derive_seed(7, "a"), wb::derive_seed(8, "a"));
  auto r1 = wb::make_rng(1, "x");
  auto r2 = wb::make_rng(1, "x");
  EXPECT_EQ(r1(), r2());
}

TEST(Run, BoundsTableHasSpotValuesAndNoCases) {
  auto rep = wb::run(wb::parse_config_text(
      R"({"ring": {"variables": ["x"]}, "task": "bounds-table", "params": {"max_delta": 4}})"));
  EXPECT_TRUE(rep.result["recursions_hold"].get<bool>());
  bool seen = false;
  for (const auto& r : rep.result["rows"])
    if (r["delta"] == 2 && r["nu"] == 2 && r["tau"] == 1) {
      EXPECT_EQ(r["E1"], 6);
      seen = true;
    }
  EXPECT_TRUE(seen);
  auto doc = json::parse(wb::report_json(rep));
  EXPECT_TRUE(doc["cases"].empty());
  EXPECT_FALSE(doc["config"].empty());
  EXPECT_EQ(doc["schema_version"], wb::kSchemaVersion);
  EXPECT_FALSE(doc.contains("timing"));
  EXPECT_EQ(count_lines(wb::report_csv(rep)), 1u);
}

TEST(Run, KoszulPowersContrast) {
  auto rep = wb::run(wb::parse_config_text(kKoszulSweep));
  ASSERT_EQ(rep.cases.size(), 6u);
  for (const auto& c : rep.cases) {
    const int t = c.module_desc.find("x^3") != std::string::npos ? 3 : 2;
    if (c.i == 0) {
      EXPECT_EQ(c.h_weak, std::to_string(t)) << c.module_desc;
    } else if (c.i == 2) {
      EXPECT_EQ(c.h_weak, "0") << c.module_desc;
    }
  }
  EXPECT_NE(rep.result["max_h_scope"].get<std::string>().find("window- and family-certified"), std::string::npos);
}

TEST(Run, ReportsAreByteIdenticalAndJobCountInvariant) {
  auto cfg = wb::parse_config_text(kKoszulSweep);
  cfg.params.jobs = 1;
  const auto a = wb::report_json(wb::run(cfg));
  EXPECT_EQ(a, wb::report_json(wb::run(cfg)));
  auto cfg2 = cfg;
  cfg2.params.jobs = 3;
  auto r2 = wb::run(cfg2);
  r2.config = cfg;
  EXPECT_EQ(a, wb::report_json(r2));
  EXPECT_EQ(a.back(), '\n');
}

TEST(Run, SeedDrivesRandomFamilies) {
  const std::string text = R"({"ring": {"variables": ["x", "y"]}, "task": "syzygetic-sweep",
    "params": {"i_min": 0, "i_max": 0, "n_max": 2,
      "module_family": {"kind": "quotient", "ideals": {"kind": "random", "count": 2}},
      "ideal_family": {"kind": "explicit", "ideals": [["x", "y"]]}}, "seed": 1})";
  auto c1 = wb::parse_config_text(text);
  auto c2 = c1;
  c2.seed = 2;
  auto a = wb::run(c1), b = wb::run(c1), c = wb::run(c2);
  EXPECT_EQ(a.result, b.result);
  EXPECT_NE(a.result["records"][0]["module"], c.result["records"][0]["module"]);
}

TEST(Run, TimingOnlyWhenRequested) {
  auto cfg = wb::parse_config_text(R"({"ring": {"variables": ["x"]}, "task": "bounds-table",
                                       "output": {"timing": true}})");
  EXPECT_TRUE(json::parse(wb::report_json(wb::run(cfg))).contains("timing"));
}

TEST(Emit, CsvHasOneRowPerCase) {
  // 3 modules x 3 ideals x one index
  auto rep = wb::run(wb::parse_config_text(R"({"ring": {"variables": ["x", "y"]}, "task": "syzygetic-sweep",
    "params": {"i_min": 0, "i_max": 0, "n_max": 3,
      "module_family": {"kind": "quotient",
                        "ideals": {"kind": "explicit", "ideals": [["x"], ["x", "y^2"], ["x*y"]]}},
      "ideal_family": {"kind": "explicit", "ideals": [["x"], ["y"], ["x", "y"]]}}})"));
  const auto csv = wb::report_csv(rep);
  EXPECT_EQ(count_lines(csv), 10u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "case_id,module_desc,ideal_desc,i,n_max,h_weak,h_strong,status");
  EXPECT_NE(csv.find("\"R/(x, y^2)\""), std::string::npos);
  EXPECT_EQ(wb::csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(Emit, WritesFilesAndReportsUnwritablePaths) {
  auto dir = fs::temp_directory_path() / "arw_emit_test";
  fs::remove_all(dir);
  auto rep = wb::run(wb::parse_config_text(kKoszulSweep));
  auto paths = wb::emit_report(rep, dir.string());
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(slurp(paths[0]), wb::report_json(rep));
  EXPECT_EQ(slurp(paths[1]), wb::report_csv(rep));
  std::ofstream(dir / "blocker") << "x";
  try {
    wb::emit_report(rep, (dir / "blocker").string());
    ADD_FAILURE() << "expected an io error";
  } catch (const arw::Error& e) {
    EXPECT_EQ(e.kind(), arw::ErrorKind::kIo);
  }
  fs::remove_all(dir);
}

TEST(Run, EveryTaskCompletesOnTheSeedCorpus) {
  std::set<std::string> tasks;
  for (const auto& t : arw_fuzz::seed_corpus()) {
    auto rep = wb::run(wb::parse_config_text(t));
    tasks.insert(rep.config.task);
    EXPECT_FALSE(rep.result.empty()) << rep.config.task;
  }
  EXPECT_EQ(tasks.size(), wb::task_names().size());
}

TEST(Run, PowerComplexAndExactnessTasks) {
  auto pc = wb::run(wb::parse_config_text(arw_fuzz::seed_corpus()[9]));
  EXPECT_TRUE(pc.result["banded_minors_equal_power"].get<bool>());
  EXPECT_TRUE(pc.result["presentation"]["minors_equal_power"].get<bool>());
  auto ex = wb::run(wb::parse_config_text(R"({"ring": {"variables": ["x", "y"]}, "task": "exactness",
    "params": {"fixtures": ["ring: x, y\nd1: x^2, x*y\nd2: x*y; -x^2\n", "ring: x, y\nd1: x, y\nd2: y; -x\n"]}})"));
  EXPECT_EQ(ex.result["agreements"], 2);
  EXPECT_FALSE(ex.result["fixtures"][0]["be_exact"].get<bool>());
  EXPECT_TRUE(ex.result["fixtures"][1]["be_exact"].get<bool>());
}

TEST(Fuzz, MutatedConfigsNeverCrash) {
  auto st = arw_fuzz::fuzz_configs(1000, 20261018);
  EXPECT_EQ(st.total, 1000u);
  EXPECT_EQ(st.crashes, 0u) << (st.crash_samples.empty() ? "" : st.crash_samples[0]);
  EXPECT_GT(st.completed, 50u);
  EXPECT_GT(st.clean_errors, 200u);
}

TEST(Cli, ExitCodes) {
  const std::string bin = ARW_WORKBENCH_BIN;
  auto dir = fs::temp_directory_path() / "arw_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"ring": {"variables": ["x"]}, "task": "bounds-table", "extra": 1})";
  auto sh = [&](const std::string& args) {
    int rc = std::system((bin + " " + args + " >" + (dir / "out.txt").string() + " 2>" +
                          (dir / "err.txt").string()).c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  const auto good = (fs::path(ARW_SOURCE_DIR) / "tools" / "configs" / "bounds_table.json").string();
  EXPECT_EQ(sh("validate --config " + good), 0);
  EXPECT_EQ(sh("run --config " + good + " --seed 9 --out " + dir.string()), 0);
  EXPECT_EQ(json::parse(slurp(dir / "bounds_table.json"))["config"]["seed"], 9);
  EXPECT_EQ(sh("run --config " + (dir / "bad.json").string()), 2);
  auto err = json::parse(slurp(dir / "err.txt"));
  EXPECT_EQ(err["error"]["location"], "extra");
  EXPECT_EQ(sh("run --config " + (dir / "missing.json").string()), 2);
  EXPECT_NE(sh("run"), 0);
  fs::remove_all(dir);
}
