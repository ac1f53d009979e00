// Command-line front end. Deliberately speaks to the engine only through the
// public C interface so the binary doubles as a smoke test for it.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lfv.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInvocation = 2;

int fail_invocation(const char* stage) {
  std::cerr << "lfv: " << stage << ": " << lfv_last_error() << "\n";
  return kExitBadInvocation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for left-invariant complex Finsler metrics on group models"};
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the configured verification suites and emit a report");
  std::string config_path;
  std::vector<std::string> suites;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  verify->add_option("--config", config_path, "JSON run configuration")->required();
  verify->add_option("--suite", suites,
                     "run only these suites (repeatable; default: all configured)");
  CLI::Option* seed_opt =
      verify->add_option("--seed", seed, "override the sampling seed");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  verify->add_option("--out", out_path, "write the report to this file (default: stdout)");
  CLI::Option* scale_opt = verify->add_option(
      "--tol-scale", tol_scale, "multiply every tolerance by this factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadInvocation;
  }

  lfv_config* cfg = nullptr;
  if (lfv_config_load(config_path.c_str(), &cfg) != LFV_OK)
    return fail_invocation("config");

  if (seed_opt->count() > 0) lfv_config_set_seed(cfg, seed);
  if (!suites.empty()) {
    std::vector<const char*> names;
    names.reserve(suites.size());
    for (const std::string& s : suites) names.push_back(s.c_str());
    if (lfv_config_select_suites(cfg, names.data(), names.size()) != LFV_OK) {
      lfv_config_free(cfg);
      return fail_invocation("suites");
    }
  }
  if (scale_opt->count() > 0 &&
      lfv_config_scale_tolerances(cfg, tol_scale) != LFV_OK) {
    lfv_config_free(cfg);
    return fail_invocation("tolerances");
  }

  std::cerr << "lfv " << lfv_version() << ": verifying " << config_path << "\n";
  lfv_report* rep = nullptr;
  if (lfv_run(cfg, &rep) != LFV_OK) {
    lfv_config_free(cfg);
    return fail_invocation("run");
  }

  char* text = nullptr;
  if (lfv_report_render(rep, format.c_str(), &text) != LFV_OK) {
    lfv_report_free(rep);
    lfv_config_free(cfg);
    return fail_invocation("render");
  }

  int exit_code = lfv_report_all_passed(rep) ? kExitPass : kExitCheckFailed;
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "lfv: cannot write " << out_path << "\n";
      exit_code = kExitBadInvocation;
    }
  }
  std::cerr << "lfv: result " << (exit_code == kExitPass ? "PASS" : "FAIL") << "\n";

  lfv_string_free(text);
  lfv_report_free(rep);
  lfv_config_free(cfg);
  return exit_code;
}
