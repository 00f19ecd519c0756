#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arw/workbench/run.hpp"

namespace wb = arw::workbench;

namespace {

enum Exit { kOk = 0, kFailure = 1, kBadConfig = 2, kInternal = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw arw::Error(arw::ErrorKind::kIo, "cannot read " + path, "config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(const arw::Error& e, const std::string& raw) {
  nlohmann::json j = {{"error",
                       {{"kind", arw::to_string(e.kind())},
                        {"location", e.location()},
                        {"message", e.message()},
                        {"detail", wb::describe_error(e, raw)}}}};
  std::cerr << j.dump() << "\n";
  const bool config_side = e.kind() == arw::ErrorKind::kConfig || e.kind() == arw::ErrorKind::kParse ||
                           e.kind() == arw::ErrorKind::kIo;
  return config_side ? kBadConfig : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin-Rees / KAS workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wb::kToolName) + " " + wb::kToolVersion);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  auto* run = app.add_subcommand("run", "run the task named in a config");
  run->add_option("--config", config_path, "JSON config")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
  auto* jobs_opt = run->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::Range(1, 64));
  run->add_option("--out", out_dir, "directory for report files");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("--config", validate_path, "JSON config")->required();

  CLI11_PARSE(app, argc, argv);

  std::string raw;
  try {
    if (*validate) {
      raw = slurp(validate_path);
      auto cfg = wb::parse_config_text(raw);
      wb::validate(cfg);
      std::cout << "ok: task " << cfg.task << "\n";
      return kOk;
    }
    raw = slurp(config_path);
    auto cfg = wb::parse_config_text(raw);
    if (*seed_opt) cfg.seed = seed;
    if (*jobs_opt) cfg.params.jobs = jobs;
    auto rep = wb::run(cfg);
    for (const auto& path : wb::emit_report(rep, out_dir)) std::cout << "wrote " << path << "\n";
    return kOk;
  } catch (const arw::Error& e) {
    return report_error(e, raw);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return kInternal;
  }
}
