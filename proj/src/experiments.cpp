#include "cvand/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>

#include "cvand/cluster_spectrum.hpp"
#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"
#include "cvand/lsq.hpp"
#include "cvand/rng.hpp"
#include "cvand/subspace.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void config_error(const std::string& msg) { fail(Errc::config, msg); }

std::string s_profile(const std::vector<ClusterEntry>& clusters) {
  std::string out;
  for (std::size_t j = 0; j < clusters.size(); ++j) out += (j ? "-" : "") + std::to_string(clusters[j].s);
  return out;
}

std::size_t total_nodes(const std::vector<ClusterEntry>& clusters) {
  std::size_t s = 0;
  for (const auto& c : clusters) s += c.s;
  return s;
}

std::string short_num(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

Range n_range(const ExperimentConfig& cfg) {
  if (cfg.N) return Range{static_cast<double>(*cfg.N), static_cast<double>(*cfg.N)};
  return cfg.N_range.value_or(kDefaultNRange);
}

long long draw_n(Rng& rng, const Range& r) {
  if (r.lo == r.hi) return static_cast<long long>(std::llround(r.lo));
  return std::llround(rng.log_uniform(r.lo, r.hi));
}

double draw_log(Rng& rng, const Range& r) { return r.lo == r.hi ? r.lo : rng.log_uniform(r.lo, r.hi); }

/// Per-sample cluster sizes: either a shared Nh/N or each cluster's own h/h_range
/// (one shared uniform draw u maps every h_range log-linearly).
struct SizePlan {
  bool from_nh = true;
  Range nh{};
};

SizePlan size_plan(const ExperimentConfig& cfg) {
  bool any_own = false;
  for (const auto& c : cfg.clusters) any_own = any_own || c.h || c.h_range;
  if (cfg.nh_range && any_own) config_error("give either Nh_range or per-cluster h/h_range, not both");
  SizePlan plan;
  if (any_own) {
    plan.from_nh = false;
    for (std::size_t j = 0; j < cfg.clusters.size(); ++j) {
      const auto& c = cfg.clusters[j];
      if (c.s >= 2 && !c.h && !c.h_range)
        config_error("clusters[" + std::to_string(j) + "] needs h or h_range");
    }
  } else {
    plan.nh = cfg.nh_range.value_or(kDefaultNhRange);
    if (!cfg.nh_values.empty()) config_error("use Nh_range for sampled experiments");
  }
  return plan;
}

double cluster_h(const ClusterEntry& c, double u) {
  if (c.h) return *c.h;
  if (c.h_range) return c.h_range->lo * std::pow(c.h_range->hi / c.h_range->lo, u);
  return 0.0;
}

ClusterConfig sample_clusters(const ExperimentConfig& cfg, const std::vector<double>& h, double theta) {
  ClusterConfig cc;
  cc.theta = theta;
  for (std::size_t j = 0; j < cfg.clusters.size(); ++j) {
    const auto& e = cfg.clusters[j];
    ClusterSpec spec;
    spec.center = e.center.value_or(0.0);
    spec.h = e.s >= 2 ? h[j] : 0.0;
    spec.tau = e.tau;
    spec.s = e.s;
    spec.layout = e.layout;
    cc.clusters.push_back(spec);
  }
  return cc;
}

double single_theta(const ExperimentConfig& cfg) {
  if (cfg.clusters.size() < 2) return kPi;
  if (cfg.theta.size() != 1) config_error("theta must be a single number for this experiment");
  for (std::size_t j = 0; j < cfg.clusters.size(); ++j)
    if (!cfg.clusters[j].center) config_error("clusters[" + std::to_string(j) + "].center is required");
  return cfg.theta.front();
}

template <class F>
std::vector<SweepRecord> run_samples(std::size_t count, int jobs, F&& make) {
  std::vector<SweepRecord> records(count);
  kernels::parallel_for(count, jobs, [&](std::size_t i) { records[i] = make(i); });
  return records;
}

json fit_json(const SlopeFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual_rms", f.residual_rms},
              {"samples", f.samples}};
}

void add_fitted_series(ExperimentResult& res, const std::string& label, const std::string& x_field,
                       const std::string& y_field, const RecordFilter& filter) {
  Series s;
  s.label = label;
  for (const auto& r : res.records) {
    if (!filter(r)) continue;
    s.x.push_back(field_value(r, x_field));
    s.y.push_back(field_value(r, y_field));
  }
  try {
    s.fit = fit_slope(res.records, x_field, y_field, filter);
    res.summary["fits"].push_back(json{{"series", label}, {"x", x_field}, {"y", y_field}, {"fit", fit_json(*s.fit)}});
  } catch (const Error& e) {
    res.summary["fits"].push_back(json{{"series", label}, {"x", x_field}, {"y", y_field}, {"error", e.what()}});
  }
  res.series.push_back(std::move(s));
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || hi < lo || count == 0) fail(Errc::invalid_argument, "bad log grid");
  std::vector<double> out;
  if (count == 1 || lo == hi) return {lo};
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1)));
  return out;
}

std::vector<long long> log_grid_int(double lo, double hi, std::size_t count) {
  std::vector<long long> out;
  for (double x : log_grid(lo, hi, count)) {
    const long long n = std::llround(x);
    if (out.empty() || n != out.back()) out.push_back(n);
  }
  return out;
}

SlopeFit fit_slope(const std::vector<SweepRecord>& records, const std::string& x_field,
                   const std::string& y_field, const RecordFilter& filter) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (filter ? !filter(r) : !r.valid) continue;
    x.push_back(field_value(r, x_field));
    y.push_back(field_value(r, y_field));
  }
  return fit_loglog(x, y);
}

ExperimentResult run_angles(const ExperimentConfig& cfg, const RunOptions& opt) {
  if (cfg.clusters.size() < 2) config_error("angles needs at least two clusters");
  if (cfg.theta.empty()) config_error("angles needs theta");
  if (!cfg.mode) config_error("angles needs mode (fixed_Nh or fixed_N)");
  for (std::size_t j = 0; j < cfg.clusters.size(); ++j)
    if (cfg.clusters[j].h || cfg.clusters[j].h_range)
      config_error("clusters[" + std::to_string(j) + "]: angles derive h from Nh; drop h/h_range");

  struct Task {
    double theta, nh;
    long long N;
  };
  std::vector<Task> tasks;
  if (*cfg.mode == AngleMode::fixed_Nh) {
    if (cfg.nh_values.empty()) config_error("fixed_Nh needs Nh");
    if (cfg.nh_range) config_error("fixed_Nh takes Nh values, not Nh_range");
    const Range nr = n_range(cfg);
    const auto ns = log_grid_int(nr.lo, nr.hi, cfg.samples);
    for (double th : cfg.theta)
      for (double nh : cfg.nh_values)
        for (long long n : ns) tasks.push_back({th, nh, n});
  } else {
    if (!cfg.N) config_error("fixed_N needs N");
    std::vector<double> nhs = cfg.nh_values;
    if (cfg.nh_range) nhs = log_grid(cfg.nh_range->lo, cfg.nh_range->hi, cfg.samples);
    if (nhs.empty()) config_error("fixed_N needs Nh_range or Nh");
    for (double th : cfg.theta)
      for (double nh : nhs) tasks.push_back({th, nh, *cfg.N});
  }

  const std::string profile = s_profile(cfg.clusters);
  ExperimentResult res;
  res.experiment = cfg.experiment;
  res.kind = "angles";
  res.records = run_samples(tasks.size(), opt.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double h = t.nh / static_cast<double>(t.N);
    std::vector<double> hs(cfg.clusters.size(), h);
    ClusterConfig cc = sample_clusters(cfg, hs, t.theta);
    double prev_center = cfg.clusters[0].center.value_or(0.0), prev_h = hs[0] * (cfg.clusters[0].s >= 2);
    for (std::size_t j = 1; j < cc.clusters.size(); ++j) {
      const double hj = cc.clusters[j].h;
      if (!cfg.clusters[j].center) cc.clusters[j].center = prev_center + t.theta + 0.5 * (prev_h + hj);
      prev_center = cc.clusters[j].center;
      prev_h = hj;
    }
    SweepRecord r = blank_record();
    r.experiment = cfg.experiment;
    r.sample = i;
    r.seed = stream_seed(opt.seed, i);
    r.N = t.N;
    r.h = h;
    r.theta = t.theta;
    r.s_profile = profile;
    const NodeSet nodes = generate_multi_cluster(cc, r.seed);
    r.beta = cluster_angle_matrix(nodes, t.N).alpha;
    r.valid = std::isfinite(r.beta) && r.beta > 0.0;
    return r;
  });

  res.summary["fits"] = json::array();
  if (*cfg.mode == AngleMode::fixed_Nh) {
    res.x_label = "N";
    for (double th : cfg.theta)
      for (double nh : cfg.nh_values)
        add_fitted_series(res, "theta=" + short_num(th) + ", Nh=" + short_num(nh), "N", "beta",
                          [th, nh](const SweepRecord& r) {
                            return r.valid && r.theta == th && std::fabs(r.nh() - nh) <= 1e-9 * nh;
                          });
  } else {
    res.x_label = "N h";
    json plateaus = json::array();
    for (double th : cfg.theta) {
      auto pick = [th](const SweepRecord& r) { return r.valid && r.theta == th; };
      add_fitted_series(res, "theta=" + short_num(th), "Nh", "beta", pick);
      // Plateau: mean beta over the smallest quarter of the Nh grid.
      std::vector<std::pair<double, double>> pts;
      for (const auto& r : res.records)
        if (pick(r)) pts.emplace_back(r.nh(), r.beta);
      std::sort(pts.begin(), pts.end());
      const std::size_t k = std::max<std::size_t>(1, pts.size() / 4);
      double mean = 0.0;
      for (std::size_t i = 0; i < std::min(k, pts.size()); ++i) mean += pts[i].second;
      if (!pts.empty()) mean /= static_cast<double>(std::min(k, pts.size()));
      plateaus.push_back(json{{"theta", th}, {"plateau_beta", mean}, {"points", std::min(k, pts.size())},
                              {"plateau_times_N_theta", mean * static_cast<double>(*cfg.N) * th}});
    }
    res.summary["plateaus"] = plateaus;
  }
  res.y_label = "beta";

  std::vector<AngleSample> samples;
  for (const auto& r : res.records)
    if (r.valid) samples.push_back(AngleSample{r.N, r.theta, r.h, r.beta});
  if (samples.size() >= 2) {
    const AngleModelFit m = fit_angle_model(samples);
    res.summary["angle_model"] = json{{"a", m.a}, {"b", m.b}, {"rms_relative_residual", m.rms_relative_residual},
                                      {"samples", m.samples}};
  }
  return res;
}

ExperimentResult run_spectrum(const ExperimentConfig& cfg, const RunOptions& opt) {
  if (cfg.clusters.empty()) config_error("spectrum needs clusters");
  const double theta = single_theta(cfg);
  const SizePlan plan = size_plan(cfg);
  const Range nr = n_range(cfg);
  const std::string profile = s_profile(cfg.clusters);
  const std::size_t M = cfg.clusters.size();

  ExperimentResult res;
  res.experiment = cfg.experiment;
  res.kind = "spectrum";
  res.records = run_samples(cfg.samples, opt.jobs, [&](std::size_t i) {
    SweepRecord r = blank_record();
    r.experiment = cfg.experiment;
    r.sample = i;
    r.seed = stream_seed(opt.seed, i);
    r.s_profile = profile;
    Rng rng(r.seed);
    r.N = draw_n(rng, nr);
    const double nh = draw_log(rng, plan.nh);
    const double u = rng.uniform01();
    std::vector<double> hs;
    for (const auto& c : cfg.clusters)
      hs.push_back(plan.from_nh ? nh / static_cast<double>(r.N) : cluster_h(c, u));
    const NodeSet nodes = generate_multi_cluster(sample_clusters(cfg, hs, theta), rng.next());
    r.h = 0.0;
    for (std::size_t j = 0; j < M; ++j)
      if (cfg.clusters[j].s >= 2) r.h = std::max(r.h, hs[j]);

    Spectrum full;
    if (M >= 2) {
      const SpectrumReport rep = union_spectrum_compare(nodes, r.N);
      full = rep.full;
      r.alpha = rep.alpha;
      r.union_bound = to_string(rep.bounds);
      r.theta = measure_stats(nodes).theta.value_or(kNaN);
    } else {
      full = singular_values(build_vandermonde({nodes.without_partition(), r.N}));
    }
    const double root = std::sqrt(static_cast<double>(r.N));
    for (double v : full.values) r.sigma.push_back(v / root);
    r.valid = full.min() > 0.0 && full.max() / full.min() <= kConditionGuard && r.nh() / 2.0 < 1.0;
    return r;
  });

  res.x_label = "N h";
  res.y_label = "sigma_j(V_N / sqrt(N))";
  res.summary["fits"] = json::array();
  const std::size_t s = total_nodes(cfg.clusters);
  for (std::size_t j = 1; j <= s; ++j)
    add_fitted_series(res, "sigma_" + std::to_string(j), "Nh", "sigma_" + std::to_string(j),
                      [](const SweepRecord& r) { return r.valid; });

  if (M >= 2) {
    std::map<std::string, std::size_t> status;
    std::size_t in_regime = 0, violations = 0;
    for (const auto& r : res.records) {
      ++status[r.union_bound];
      if (r.N * r.theta >= 20.0 && r.nh() <= 0.05 && r.union_bound != "not_applicable") {
        ++in_regime;
        if (r.union_bound == "violated") ++violations;
      }
    }
    res.summary["union_bound"] = json{{"status_counts", status}, {"in_regime", in_regime}, {"violations", violations}};
    if (plan.from_nh) {
      ClusterConfig tmpl = sample_clusters(cfg, std::vector<double>(M, 1.0), theta);
      std::vector<CensusSample> cs;
      for (const auto& r : res.records)
        if (r.valid) cs.push_back(CensusSample{r.nh(), r.sigma});
      try {
        const CensusReport census = multiplicity_census(tmpl, cs);
        res.summary["census"] = json{{"expected", census.expected}, {"measured", census.measured},
                                     {"slopes", census.slopes}, {"bins", census.bins}, {"match", census.match}};
      } catch (const Error& e) {
        res.summary["census"] = json{{"error", e.what()}};
      }
    }
  }
  return res;
}

ExperimentResult run_leastsq(const ExperimentConfig& cfg, const RunOptions& opt) {
  if (cfg.clusters.empty()) config_error("leastsq needs clusters");
  const double theta = single_theta(cfg);
  const SizePlan plan = size_plan(cfg);
  const Range nr = n_range(cfg);
  const Range noise = cfg.noise_eps_range.value_or(kDefaultNoiseRange);
  if (!(noise.hi > 0.0)) config_error("noise_eps_range collapsed to zero: delta_a would divide by zero");
  const std::string profile = s_profile(cfg.clusters);
  const std::size_t M = cfg.clusters.size();

  std::vector<std::size_t> holder_fail(cfg.samples, 0);
  ExperimentResult res;
  res.experiment = cfg.experiment;
  res.kind = "leastsq";
  res.records = run_samples(cfg.samples, opt.jobs, [&](std::size_t i) {
    SweepRecord r = blank_record();
    r.experiment = cfg.experiment;
    r.sample = i;
    r.seed = stream_seed(opt.seed, i);
    r.s_profile = profile;
    Rng rng(r.seed);
    r.N = draw_n(rng, nr);
    const double nh = draw_log(rng, plan.nh);
    const double u = rng.uniform01();
    r.eps = rng.uniform(noise.lo, noise.hi);
    std::vector<double> hs;
    for (const auto& c : cfg.clusters)
      hs.push_back(plan.from_nh ? nh / static_cast<double>(r.N) : cluster_h(c, u));
    const NodeSet nodes = generate_multi_cluster(sample_clusters(cfg, hs, theta), rng.next());
    r.h = 0.0;
    for (std::size_t j = 0; j < M; ++j)
      if (cfg.clusters[j].s >= 2) r.h = std::max(r.h, hs[j]);
    if (M >= 2) r.theta = measure_stats(nodes).theta.value_or(kNaN);
    const PerturbationResult p = perturbation_experiment(nodes, r.N, r.eps, rng.next(), cfg.complex_noise);
    r.delta_a = p.delta_a;
    r.valid = p.in_regime && p.noise_inf > 0.0;
    holder_fail[i] = p.holder_ok ? 0 : 1;
    return r;
  });

  res.x_label = "N h";
  res.y_label = "delta a_l";
  res.summary["fits"] = json::array();
  std::size_t l = 1;
  for (std::size_t j = 0; j < M; ++j)
    for (std::size_t k = 0; k < cfg.clusters[j].s; ++k, ++l)
      add_fitted_series(res, "a_" + std::to_string(l) + " (cluster " + std::to_string(j + 1) + ")", "Nh",
                        "delta_a_" + std::to_string(l), [](const SweepRecord& r) { return r.valid; });
  std::size_t fails = 0;
  for (auto f : holder_fail) fails += f;
  res.summary["holder_violations"] = fails;
  return res;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "svg") return OutputFormat::svg;
  if (name == "both") return OutputFormat::both;
  fail(Errc::config, "format must be csv, svg or both");
}

void emit(const ExperimentResult& result, const std::filesystem::path& out_dir, OutputFormat format,
          const RunOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(Errc::io, "cannot create " + out_dir.string() + ": " + ec.message());
  const auto base = out_dir / result.experiment;
  if (format != OutputFormat::svg) write_text(base.string() + ".csv", to_csv(result.records));
  if (format != OutputFormat::csv)
    write_text(base.string() + ".svg",
               render_loglog(result.experiment, result.x_label, result.y_label, result.series));

  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  json meta{{"experiment", result.experiment}, {"kind", result.kind}, {"seed", options.seed},
            {"rng", std::string(kRngAlgorithm)}, {"records", result.records.size()},
            {"timestamp", stamp}, {"summary", result.summary}};
  write_text(base.string() + "_meta.json", meta.dump(2) + "\n");
}

}  // namespace cvand
