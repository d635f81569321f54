#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvand/config.hpp"
#include "cvand/fit.hpp"
#include "cvand/records.hpp"
#include "cvand/svg.hpp"

namespace cvand {

struct RunOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct ExperimentResult {
  std::string experiment;
  std::string kind;  // angles | spectrum | leastsq
  std::vector<SweepRecord> records;
  std::string x_label, y_label;
  std::vector<Series> series;
  nlohmann::json summary;  // fits, census, regime counts
};

/// Defaults for ranges the configuration may leave out.
inline constexpr Range kDefaultNRange{100.0, 5000.0};
inline constexpr Range kDefaultNhRange{1e-3, 1e-1};
inline constexpr Range kDefaultNoiseRange{1e-6, 1e-3};

/// Two or more equispaced clusters sharing h = Nh/N. fixed_Nh sweeps N on a
/// log grid for every (theta, Nh); fixed_N sweeps Nh on a log grid for every
/// theta. Clusters without a center are placed right after the previous one
/// with an edge gap of exactly theta.
ExperimentResult run_angles(const ExperimentConfig& config, const RunOptions& options);

/// N and Nh drawn log-uniformly per sample; records sigma_j(V_N / sqrt(N)).
/// Multi-cluster runs also attach the union comparison and a census.
ExperimentResult run_spectrum(const ExperimentConfig& config, const RunOptions& options);

/// Perturbation experiment per sample; records delta_a for every component.
ExperimentResult run_leastsq(const ExperimentConfig& config, const RunOptions& options);

using RecordFilter = std::function<bool(const SweepRecord&)>;

/// Log-log OLS of y_field against x_field over the records accepted by the
/// filter (default: valid records).
SlopeFit fit_slope(const std::vector<SweepRecord>& records, const std::string& x_field,
                   const std::string& y_field, const RecordFilter& filter = {});

enum class OutputFormat { csv, svg, both };

OutputFormat parse_format(const std::string& name);

/// Writes <experiment>.csv and/or <experiment>.svg plus <experiment>_meta.json
/// (timestamp, seed, RNG id, summary). The CSV carries no timestamp so it is
/// byte-identical across runs.
void emit(const ExperimentResult& result, const std::filesystem::path& out_dir, OutputFormat format,
          const RunOptions& options);

/// Log-spaced integer grid with duplicates removed.
std::vector<long long> log_grid_int(double lo, double hi, std::size_t count);
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace cvand
