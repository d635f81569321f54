#include "cvand/records.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cvand/errors.hpp"

namespace cvand {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

std::size_t widest(const std::vector<SweepRecord>& records, bool sigma) {
  std::size_t w = 0;
  for (const auto& r : records) w = std::max(w, sigma ? r.sigma.size() : r.delta_a.size());
  return w;
}

std::string cell(double x) { return std::isnan(x) ? std::string() : format_double(x); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s.empty()) return kNaN;
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(Errc::invalid_argument, "bad number in CSV: " + s);
  return x;
}

template <class T>
T parse_integer(const std::string& s) {
  T x{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(Errc::invalid_argument, "bad integer in CSV: " + s);
  return x;
}

const std::vector<std::string> kFixedColumns = {
    "experiment", "sample", "seed", "N", "h", "Nh", "theta", "s_profile",
    "eps", "beta", "alpha", "union_bound", "valid"};

}  // namespace

bool SweepRecord::operator==(const SweepRecord& o) const {
  return experiment == o.experiment && sample == o.sample && seed == o.seed && N == o.N &&
         same(h, o.h) && same(theta, o.theta) && s_profile == o.s_profile && same(eps, o.eps) &&
         same(beta, o.beta) && same(alpha, o.alpha) && union_bound == o.union_bound &&
         valid == o.valid && same(sigma, o.sigma) && same(delta_a, o.delta_a);
}

SweepRecord blank_record() {
  SweepRecord r;
  r.h = r.theta = r.eps = r.beta = r.alpha = kNaN;
  return r;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> csv_header(const std::vector<SweepRecord>& records) {
  std::vector<std::string> h = kFixedColumns;
  for (std::size_t j = 1; j <= widest(records, true); ++j) h.push_back("sigma_" + std::to_string(j));
  for (std::size_t j = 1; j <= widest(records, false); ++j) h.push_back("delta_a_" + std::to_string(j));
  return h;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  const auto header = csv_header(records);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  const std::size_t ws = widest(records, true), wd = widest(records, false);
  for (const auto& r : records) {
    if (r.experiment.find_first_of(",\n") != std::string::npos)
      fail(Errc::invalid_argument, "experiment id cannot contain commas or newlines");
    out << r.experiment << ',' << r.sample << ',' << r.seed << ',' << r.N << ',' << cell(r.h) << ','
        << cell(std::isnan(r.h) ? kNaN : r.nh()) << ',' << cell(r.theta) << ',' << r.s_profile << ','
        << cell(r.eps) << ',' << cell(r.beta) << ',' << cell(r.alpha) << ',' << r.union_bound << ','
        << (r.valid ? 1 : 0);
    for (std::size_t j = 0; j < ws; ++j) out << ',' << (j < r.sigma.size() ? cell(r.sigma[j]) : "");
    for (std::size_t j = 0; j < wd; ++j) out << ',' << (j < r.delta_a.size() ? cell(r.delta_a[j]) : "");
    out << '\n';
  }
  return out.str();
}

std::vector<SweepRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Errc::invalid_argument, "CSV has no header");
  const auto header = split(line);
  if (header.size() < kFixedColumns.size() ||
      !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin()))
    fail(Errc::invalid_argument, "unexpected CSV header");
  std::size_t ws = 0, wd = 0;
  for (std::size_t i = kFixedColumns.size(); i < header.size(); ++i)
    (header[i].rfind("sigma_", 0) == 0 ? ws : wd) += 1;

  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    const auto f = split(line);
    if (f.size() != header.size()) fail(Errc::invalid_argument, "CSV row has the wrong width");
    SweepRecord r;
    r.experiment = f[0];
    r.sample = parse_integer<std::size_t>(f[1]);
    r.seed = parse_integer<std::uint64_t>(f[2]);
    r.N = parse_integer<long long>(f[3]);
    r.h = parse_double(f[4]);
    r.theta = parse_double(f[6]);
    r.s_profile = f[7];
    r.eps = parse_double(f[8]);
    r.beta = parse_double(f[9]);
    r.alpha = parse_double(f[10]);
    r.union_bound = f[11];
    r.valid = f[12] == "1";
    std::size_t c = kFixedColumns.size();
    // Trailing empty cells belong to narrower records.
    for (std::size_t j = 0; j < ws; ++j, ++c)
      if (!f[c].empty()) r.sigma.push_back(parse_double(f[c]));
    for (std::size_t j = 0; j < wd; ++j, ++c)
      if (!f[c].empty()) r.delta_a.push_back(parse_double(f[c]));
    out.push_back(std::move(r));
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io, "cannot write " + path.string());
  out << text;
  if (!out) fail(Errc::io, "write failed for " + path.string());
}

double field_value(const SweepRecord& r, const std::string& field) {
  if (field == "N") return static_cast<double>(r.N);
  if (field == "h") return r.h;
  if (field == "Nh") return r.nh();
  if (field == "theta") return r.theta;
  if (field == "eps") return r.eps;
  if (field == "beta") return r.beta;
  if (field == "alpha") return r.alpha;
  auto indexed = [&](const std::string& prefix, const std::vector<double>& v) {
    const std::size_t j = std::stoul(field.substr(prefix.size()));
    return j >= 1 && j <= v.size() ? v[j - 1] : kNaN;
  };
  if (field.rfind("sigma_", 0) == 0) return indexed("sigma_", r.sigma);
  if (field.rfind("delta_a_", 0) == 0) return indexed("delta_a_", r.delta_a);
  fail(Errc::invalid_argument, "unknown record field " + field);
}

}  // namespace cvand
