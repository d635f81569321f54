#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cvand/nodes.hpp"

namespace cvand {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ClusterEntry {
  std::optional<double> center;  // angles experiments may omit it (auto placement)
  std::optional<double> h;
  std::optional<Range> h_range;
  std::size_t s = 1;
  std::optional<double> tau;
  Layout layout = Layout::equispaced;
};

enum class AngleMode { fixed_Nh, fixed_N };

/// Parsed experiment configuration. Keys beyond the documented set are
/// rejected.
struct ExperimentConfig {
  std::string experiment;
  std::vector<ClusterEntry> clusters;
  std::vector<double> theta;            // "theta": number or list
  std::optional<long long> N;
  std::optional<Range> N_range;
  std::size_t samples = 200;
  std::optional<Range> noise_eps_range;
  std::optional<AngleMode> mode;
  std::vector<double> nh_values;        // "Nh": number or list
  std::optional<Range> nh_range;        // "Nh_range"
  bool complex_noise = false;
  std::vector<std::string> suites;      // verify only; empty = all
};

/// Throws Error(Errc::config) with the offending field in the message.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a file; unreadable files raise Errc::io.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace cvand
