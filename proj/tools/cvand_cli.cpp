// cvand: clustered Vandermonde experiments and invariant suites.
//
// Exit codes: 0 success, 1 configuration (or other library) error,
// 2 invariant suite failure, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvand/config.hpp"
#include "cvand/errors.hpp"
#include "cvand/experiments.hpp"
#include "cvand/records.hpp"
#include "cvand/verify.hpp"

namespace {

using namespace cvand;

struct Args {
  std::string config;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format = "both";
  int jobs = 1;
};

void add_common(CLI::App* sub, Args& a, bool config_required) {
  auto* opt = sub->add_option("--config", a.config, "JSON experiment configuration");
  if (config_required) opt->required();
  sub->add_option("--seed", a.seed, "base RNG seed")->capture_default_str();
  sub->add_option("--out", a.out, "output directory")->capture_default_str();
  sub->add_option("--format", a.format, "csv, svg or both")->capture_default_str();
  sub->add_option("--jobs", a.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

int run_experiment(const std::string& kind, const Args& a) {
  const ExperimentConfig cfg = load_config(a.config);
  const OutputFormat fmt = parse_format(a.format);
  const RunOptions opts{a.seed, a.jobs};
  ExperimentResult res = kind == "angles"     ? run_angles(cfg, opts)
                         : kind == "spectrum" ? run_spectrum(cfg, opts)
                                              : run_leastsq(cfg, opts);
  emit(res, a.out, fmt, opts);
  std::cout << res.summary.dump(2) << '\n';
  return 0;
}

int run_verify_cmd(const Args& a, const std::vector<std::string>& cli_suites) {
  std::vector<std::string> names = cli_suites;
  if (!a.config.empty() && names.empty()) names = load_config(a.config).suites;
  parse_format(a.format);  // validated for uniformity, unused

  const auto results = run_verify(names, a.seed, a.jobs);
  std::filesystem::create_directories(a.out);
  nlohmann::json report = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << "  instances=" << r.instances
              << " violations=" << r.violations << " worst_ratio=" << format_double(r.worst_ratio) << '\n';
    report.push_back({{"suite", r.name}, {"instances", r.instances}, {"required", r.required},
                      {"violations", r.violations}, {"worst_ratio", r.worst_ratio}, {"passed", r.passed()}});
    if (!r.passed()) {
      all = false;
      const auto path = std::filesystem::path(a.out) / ("verify_" + r.name + "_failure.json");
      write_text(path, r.first_failure.dump(2) + "\n");
      std::cout << "  replay: " << path.string() << '\n';
    }
  }
  write_text(std::filesystem::path(a.out) / "verify_report.json", report.dump(2) + "\n");
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustered Vandermonde conditioning experiments"};
  app.require_subcommand(1);
  Args a;
  std::vector<std::string> suites;
  for (const char* name : {"angles", "spectrum", "leastsq"})
    add_common(app.add_subcommand(name, std::string("run the ") + name + " experiment"), a, true);
  auto* verify = app.add_subcommand("verify", "run the explicit-constant invariant suites");
  add_common(verify, a, false);
  verify->add_option("--suite", suites, "suite name (repeatable); default all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    auto* sub = app.get_subcommands().front();
    if (sub->get_name() == "verify") return run_verify_cmd(a, suites);
    return run_experiment(sub->get_name(), a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::io ? 3 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
