#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cvand/config.hpp"
#include "cvand/errors.hpp"
#include "cvand/experiments.hpp"
#include "cvand/fit.hpp"
#include "cvand/records.hpp"
#include "cvand/svg.hpp"
#include "cvand/verify.hpp"

using namespace cvand;
namespace fs = std::filesystem;

namespace {

const char* kSingle = R"({
  "experiment": "single",
  "clusters": [{"center": 0.0, "s": 3, "layout": "equispaced"}],
  "N_range": [100, 2000],
  "Nh_range": [1e-3, 1e-1],
  "samples": 40
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cvand_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("log-log fit") {
  std::vector<double> x = {1, 2, 5, 10, 30}, y;
  for (double v : x) y.push_back(v * v);
  const SlopeFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.residual_rms <= 1e-14);
  const std::vector<double> two_x = {1, 10, 10}, two_y = {1, 100, 100};
  CHECK(fit_loglog(two_x, two_y).slope == doctest::Approx(2.0));
  const std::vector<double> c(5, 3.0);
  CHECK(fit_loglog(x, c).slope == doctest::Approx(0.0));
  const std::vector<double> neg = {1, -2, 3, 4, 5};
  CHECK_THROWS_AS(fit_loglog(x, neg), Error);
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("configuration parsing") {
  const ExperimentConfig c = parse_config(kSingle);
  CHECK(c.experiment == "single");
  CHECK(c.clusters.size() == 1);
  CHECK(c.clusters[0].s == 3);
  CHECK(c.samples == 40);
  CHECK(c.nh_range->hi == 0.1);

  CHECK(config_error(R"({"experiment": "x", "bogus": 1})").find("bogus") != std::string::npos);
  CHECK(config_error(R"({"experiment": "x", "clusters": [{"s": 2, "colour": 1}]})").find("clusters[0].colour") !=
        std::string::npos);
  CHECK(config_error(R"({"experiment": "x", "samples": -3})").find("samples") != std::string::npos);
  CHECK(config_error(R"({"experiment": "x", "clusters": [{"s": 2, "h": 0.1, "h_range": [0.1, 0.2]}]})") != "");
  CHECK(config_error(R"({"experiment": "x",)").find("line") != std::string::npos);
  CHECK(config_error(R"({"experiment": "a/b"})") != "");
  CHECK(config_error(R"({"experiment": "x", "rng": "pcg"})").find("rng") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/cvand.json"), Error);
}

TEST_CASE("CSV serialization round-trips") {
  CHECK(to_csv({}).find('\n') == to_csv({}).size() - 1);
  std::vector<SweepRecord> recs;
  for (int i = 0; i < 5; ++i) {
    SweepRecord r = blank_record();
    r.experiment = "rt";
    r.sample = static_cast<std::size_t>(i);
    r.seed = 0xffffffffffffffffULL - static_cast<std::uint64_t>(i);
    r.N = 100 + i;
    r.h = 1.0 / 3.0 * std::pow(10.0, -i);
    r.s_profile = "2-1";
    r.union_bound = i % 2 ? "holds" : "";
    r.valid = i != 3;
    r.sigma = std::vector<double>(static_cast<std::size_t>(i + 1), std::nextafter(0.1, 1.0));
    if (i == 2) r.delta_a = {1e-300, 5e300};
    recs.push_back(r);
  }
  const std::string text = to_csv(recs);
  const auto back = parse_csv(text);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(back[i] == recs[i]);
  CHECK(to_csv(back) == text);
  CHECK(csv_header(recs).back() == "delta_a_2");
}

TEST_CASE("SVG rendering annotates slopes") {
  Series s{"sigma_1", {1e-3, 1e-2, 1e-1}, {1, 10, 100}, fit_loglog(std::vector<double>{1e-3, 1e-2, 1e-1}, std::vector<double>{1, 10, 100})};
  const std::string svg = render_loglog("t", "Nh", "sigma", {s});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("slope 1.00") != std::string::npos);
}

TEST_CASE("experiments are deterministic and independent of the thread count") {
  const ExperimentConfig c = parse_config(kSingle);
  const ExperimentResult a = run_spectrum(c, {5, 1});
  const ExperimentResult b = run_spectrum(c, {5, 4});
  CHECK(a.records.size() == 40);
  CHECK(to_csv(a.records) == to_csv(b.records));
  CHECK(to_csv(run_spectrum(c, {6, 1}).records) != to_csv(a.records));

  const fs::path d1 = scratch("emit1"), d2 = scratch("emit2");
  emit(a, d1, OutputFormat::both, {5, 1});
  emit(b, d2, OutputFormat::both, {5, 4});
  CHECK(slurp(d1 / "single.csv") == slurp(d2 / "single.csv"));
  CHECK(fs::exists(d1 / "single.svg"));
  CHECK(fs::exists(d1 / "single_meta.json"));
  CHECK(slurp(d1 / "single.svg").find("slope") != std::string::npos);

  const ExperimentConfig ls = parse_config(R"({
    "experiment": "ls", "clusters": [{"center": -1, "s": 2}, {"center": 1, "s": 1}], "theta": 1.0,
    "N_range": [100, 500], "samples": 12})");
  CHECK(to_csv(run_leastsq(ls, {3, 1}).records) == to_csv(run_leastsq(ls, {3, 3}).records));

  const ExperimentConfig an = parse_config(R"({
    "experiment": "an", "clusters": [{"center": 0, "s": 2}, {"s": 2}], "theta": 0.5, "mode": "fixed_Nh",
    "Nh": 1e-6, "N_range": [100, 1000], "samples": 1})");
  CHECK(run_angles(an, {1, 1}).records.size() == 1);
}

TEST_CASE("degenerate noise range is rejected") {
  const ExperimentConfig ls = parse_config(R"({
    "experiment": "ls0", "clusters": [{"center": 0, "s": 2}], "N_range": [100, 500],
    "noise_eps_range": [0, 0], "samples": 5})");
  CHECK_THROWS_AS(run_leastsq(ls, {1, 1}), Error);
}

TEST_CASE("emit reports unwritable paths") {
  const ExperimentResult r = run_spectrum(parse_config(kSingle), {1, 1});
  CHECK_THROWS_AS(emit(r, "/proc/cvand/nope", OutputFormat::csv, {1, 1}), Error);
  CHECK_THROWS_AS(parse_format("png"), Error);
}

TEST_CASE("power sums and trigonometric cancellation") {
  const FaulhaberCheck f = faulhaber_check(3, 4);
  CHECK(f.direct == "100");
  CHECK(f.closed == "100");
  CHECK(f.equal);
  CHECK(f.bounds_ok);
  // Independent brute force in 128-bit integers.
  for (int p = 1; p <= 6; ++p) {
    unsigned __int128 sum = 0;
    for (unsigned long long k = 1; k <= 1000; ++k) {
      unsigned __int128 t = 1;
      for (int i = 0; i < p; ++i) t *= k;
      sum += t;
    }
    std::string digits;
    for (unsigned __int128 v = sum; v > 0; v /= 10) digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    CHECK(faulhaber_check(p, 1000).direct == digits);
    CHECK(faulhaber_check(p, 1000).equal);
  }
  const CancellationCheck c = trig_cancellation(3, 1, 3.141592653589793);
  CHECK(c.value == doctest::Approx(2.0));
  CHECK(c.bound == doctest::Approx(3.0));
  CHECK_THROWS_AS(trig_cancellation(3, 1, 0.0), Error);
}

TEST_CASE("verify suites") {
  const auto results = run_verify({}, 1, 4);
  CHECK(results.size() == suite_names().size());
  for (const auto& r : results) {
    INFO(r.name << " " << r.first_failure.dump());
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(run_suite("nope", 1), Error);
}

TEST_CASE("command line exit codes") {
  const std::string cli = CVAND_CLI_PATH;
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  write_text(dir / "good.json", kSingle);
  write_text(dir / "bad.json", R"({"experiment": "x", "unknown_key": 1})");
  const auto run = [&](const std::string& args) {
    const int rc = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  CHECK(run("spectrum --config " + (dir / "good.json").string() + " --out " + (dir / "out").string() + " --format csv") == 0);
  CHECK(fs::exists(dir / "out" / "single.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "single.svg"));
  CHECK(run("spectrum --config " + (dir / "bad.json").string() + " --out " + (dir / "out").string()) == 1);
  CHECK(run("spectrum --config " + (dir / "missing.json").string()) == 3);
  CHECK(run("spectrum --config " + (dir / "good.json").string() + " --out /proc/cvand") == 3);
  CHECK(run("verify --suite faulhaber --suite trig-cancellation --out " + (dir / "v").string()) == 0);
  CHECK(fs::exists(dir / "v" / "verify_report.json"));
  CHECK(run("verify --suite nope --out " + (dir / "v").string()) == 1);
}
