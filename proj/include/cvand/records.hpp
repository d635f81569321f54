#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cvand {

/// One experiment sample. Unused scalars stay NaN and are written as empty
/// CSV cells.
struct SweepRecord {
  std::string experiment;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  long long N = 0;
  double h = 0.0;
  double theta = 0.0;       // configured separation, NaN for one cluster
  std::string s_profile;    // multiplicities joined by '-'
  double eps = 0.0;         // noise level (leastsq), NaN otherwise
  double beta = 0.0;        // angles: alpha over all pairs
  double alpha = 0.0;       // spectrum: measured angle defect
  std::string union_bound;  // holds | violated | not_applicable | empty
  bool valid = true;        // regime flag
  std::vector<double> sigma;
  std::vector<double> delta_a;

  double nh() const { return static_cast<double>(N) * h; }
  bool operator==(const SweepRecord&) const;
};

/// Returns a record with every scalar measurement set to NaN.
SweepRecord blank_record();

/// Stable header; sigma/delta_a columns sized by the widest record.
std::vector<std::string> csv_header(const std::vector<SweepRecord>& records);

/// 17 significant digits, '\n' line endings.
std::string to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> parse_csv(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);

/// %.17g, which round-trips every double.
std::string format_double(double x);

/// Named scalar for slope fits: N, h, Nh, theta, eps, beta, alpha,
/// sigma_<j>, delta_a_<j> (1-based j). NaN when unavailable.
double field_value(const SweepRecord& r, const std::string& field);

}  // namespace cvand
