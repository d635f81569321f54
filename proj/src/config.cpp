#include "cvand/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cvand/errors.hpp"

namespace cvand {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  fail(Errc::config, "field '" + field + "': " + why);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) bad(where.empty() ? key : where + "." + key, "unknown key");
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

double positive(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (!(x > 0.0)) bad(field, "must be positive");
  return x;
}

long long integer(const json& v, const std::string& field, long long min) {
  if (!v.is_number_integer()) bad(field, "expected an integer");
  const long long x = v.get<long long>();
  if (x < min) bad(field, "must be >= " + std::to_string(min));
  return x;
}

Range range(const json& v, const std::string& field, bool allow_zero = false) {
  if (!v.is_array() || v.size() != 2) bad(field, "expected [lo, hi]");
  Range r{number(v[0], field + "[0]"), number(v[1], field + "[1]")};
  if (r.lo > r.hi) bad(field, "lo exceeds hi");
  if (!allow_zero && !(r.lo > 0.0)) bad(field, "bounds must be positive");
  if (allow_zero && r.lo < 0.0) bad(field, "bounds must be >= 0");
  return r;
}

std::vector<double> number_or_list(const json& v, const std::string& field) {
  std::vector<double> out;
  if (v.is_array()) {
    if (v.empty()) bad(field, "list is empty");
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(positive(v[i], field + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(positive(v, field));
  }
  return out;
}

ClusterEntry parse_cluster(const json& c, const std::string& where) {
  if (!c.is_object()) bad(where, "expected an object");
  reject_unknown(c, {"center", "h", "h_range", "s", "tau", "layout"}, where);
  ClusterEntry e;
  if (c.contains("center")) e.center = number(c["center"], where + ".center");
  if (c.contains("h") && c.contains("h_range")) bad(where, "give either h or h_range");
  if (c.contains("h")) {
    e.h = number(c["h"], where + ".h");
    if (*e.h < 0.0) bad(where + ".h", "must be >= 0");
  }
  if (c.contains("h_range")) e.h_range = range(c["h_range"], where + ".h_range");
  if (!c.contains("s")) bad(where + ".s", "missing");
  e.s = static_cast<std::size_t>(integer(c["s"], where + ".s", 1));
  if (c.contains("tau")) {
    const double t = number(c["tau"], where + ".tau");
    if (!(t > 0.0 && t <= 1.0)) bad(where + ".tau", "must lie in (0, 1]");
    e.tau = t;
  }
  if (c.contains("layout")) {
    if (!c["layout"].is_string()) bad(where + ".layout", "expected a string");
    const auto name = c["layout"].get<std::string>();
    if (name == "equispaced") e.layout = Layout::equispaced;
    else if (name == "uniform_random" || name == "uniform-random") e.layout = Layout::uniform_random;
    else bad(where + ".layout", "expected equispaced or uniform_random");
  }
  return e;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed JSON at byte " << e.byte;
    const auto upto = json_text.substr(0, std::min(e.byte, json_text.size()));
    msg << " (line " << 1 + std::count(upto.begin(), upto.end(), '\n') << ")";
    fail(Errc::config, msg.str());
  }
  if (!doc.is_object()) fail(Errc::config, "top level must be an object");
  reject_unknown(doc,
                 {"experiment", "clusters", "theta", "N", "N_range", "samples", "noise_eps_range",
                  "mode", "Nh", "Nh_range", "complex_noise", "suites", "rng"},
                 "");

  ExperimentConfig cfg;
  if (!doc.contains("experiment") || !doc["experiment"].is_string())
    bad("experiment", "missing or not a string");
  cfg.experiment = doc["experiment"].get<std::string>();
  if (cfg.experiment.empty() || cfg.experiment.find_first_of("/\\,\"\n") != std::string::npos)
    bad("experiment", "must be a non-empty name without path separators");

  if (doc.contains("clusters")) {
    if (!doc["clusters"].is_array()) bad("clusters", "expected a list");
    for (std::size_t i = 0; i < doc["clusters"].size(); ++i)
      cfg.clusters.push_back(parse_cluster(doc["clusters"][i], "clusters[" + std::to_string(i) + "]"));
  }
  if (doc.contains("theta")) cfg.theta = number_or_list(doc["theta"], "theta");
  if (doc.contains("N") && doc.contains("N_range")) bad("N", "give either N or N_range");
  if (doc.contains("N")) cfg.N = integer(doc["N"], "N", 1);
  if (doc.contains("N_range")) {
    cfg.N_range = range(doc["N_range"], "N_range");
    if (cfg.N_range->lo < 1.0) bad("N_range", "N must be >= 1");
  }
  if (doc.contains("samples")) cfg.samples = static_cast<std::size_t>(integer(doc["samples"], "samples", 1));
  if (doc.contains("noise_eps_range")) cfg.noise_eps_range = range(doc["noise_eps_range"], "noise_eps_range", true);
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) bad("mode", "expected a string");
    const auto m = doc["mode"].get<std::string>();
    if (m == "fixed_Nh") cfg.mode = AngleMode::fixed_Nh;
    else if (m == "fixed_N") cfg.mode = AngleMode::fixed_N;
    else bad("mode", "expected fixed_Nh or fixed_N");
  }
  if (doc.contains("Nh")) cfg.nh_values = number_or_list(doc["Nh"], "Nh");
  if (doc.contains("Nh_range")) cfg.nh_range = range(doc["Nh_range"], "Nh_range");
  if (doc.contains("complex_noise")) {
    if (!doc["complex_noise"].is_boolean()) bad("complex_noise", "expected true or false");
    cfg.complex_noise = doc["complex_noise"].get<bool>();
  }
  if (doc.contains("suites")) {
    if (!doc["suites"].is_array()) bad("suites", "expected a list of names");
    for (const auto& s : doc["suites"]) {
      if (!s.is_string()) bad("suites", "expected strings");
      cfg.suites.push_back(s.get<std::string>());
    }
  }
  if (doc.contains("rng")) {
    if (!doc["rng"].is_string() || doc["rng"].get<std::string>() != "mt19937_64+u53+splitmix64")
      bad("rng", "only mt19937_64+u53+splitmix64 is implemented");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace cvand
