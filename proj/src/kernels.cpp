#include "cvand/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "cvand/errors.hpp"

namespace cvand::kernels {

Complex unit_phase(long long k, double x) {
  constexpr double grid = 0x1.0p20;
  const double a = std::nearbyint(x * grid) / grid;
  const double d = x - a;
  const double kd = static_cast<double>(k);
  return std::polar(1.0, kd * a) * std::polar(1.0, kd * d);
}

namespace {

void check_frequencies(long long k_first, Eigen::Index rows) {
  const long long k_last = k_first + static_cast<long long>(rows) - 1;
  if (std::llabs(k_first) > kMaxFrequency || std::llabs(k_last) > kMaxFrequency)
    fail(Errc::invalid_argument, "frequency range exceeds 2^30");
}

void vandermonde_row(std::span<const double> x, long long k, double scale, ComplexMatrix& out,
                     Eigen::Index r) {
  for (std::size_t j = 0; j < x.size(); ++j)
    out(r, static_cast<Eigen::Index>(j)) = scale * unit_phase(k, x[j]);
}

// Power-series evaluation is used while k * span <= kSeriesLimit; beyond it
// the plain Newton recursion has enough spacing to be accurate.
constexpr double kSeriesLimit = 2.0;
constexpr int kMaxSeriesTerms = 60;

struct DdWorkspace {
  // h[j][r]: complete homogeneous symmetric polynomial of degree r in
  // offsets[0..j].
  std::vector<std::vector<double>> h;
};

DdWorkspace make_workspace(std::span<const double> offsets) {
  DdWorkspace ws;
  const std::size_t s = offsets.size();
  ws.h.assign(s, std::vector<double>(kMaxSeriesTerms + 1, 0.0));
  for (std::size_t j = 0; j < s; ++j) {
    for (int r = 0; r <= kMaxSeriesTerms; ++r) {
      const double prev_points = j > 0 ? ws.h[j - 1][r] : (r == 0 ? 1.0 : 0.0);
      const double same_points = r > 0 ? ws.h[j][r - 1] : 0.0;
      ws.h[j][r] = (j == 0) ? std::pow(offsets[0], r) : prev_points + offsets[j] * same_points;
    }
  }
  return ws;
}

void dd_row(double anchor, std::span<const double> offsets, const DdWorkspace& ws, long long k,
            ComplexMatrix& out, Eigen::Index row) {
  const std::size_t s = offsets.size();
  const Complex phase = unit_phase(k, anchor);
  const double kd = static_cast<double>(k);
  double span = 0.0;
  for (double d : offsets) span = std::max(span, std::fabs(d));
  const Complex ik(0.0, kd);

  if (kd * span <= kSeriesLimit) {
    Complex lead(1.0, 0.0);  // (ik)^j
    for (std::size_t j = 0; j < s; ++j) {
      Complex sum(0.0, 0.0);
      Complex c(1.0, 0.0);  // (ik)^r j! / (r + j)!
      double bound = 1.0;   // (k span)^r / r!
      for (int r = 0; r <= kMaxSeriesTerms; ++r) {
        if (r > 0) {
          c *= ik / static_cast<double>(r + static_cast<int>(j));
          bound *= kd * span / r;
        }
        sum += c * ws.h[j][r];
        if (r > 0 && bound < 1e-19) break;
      }
      out(row, static_cast<Eigen::Index>(j)) = phase * lead * sum;
      lead *= ik;
    }
    return;
  }

  std::vector<Complex> f(s);
  for (std::size_t i = 0; i < s; ++i) f[i] = unit_phase(k, offsets[i]);
  out(row, 0) = phase * f[0];
  double factorial = 1.0;
  for (std::size_t level = 1; level < s; ++level) {
    for (std::size_t i = s - 1; i >= level; --i)
      f[i] = (f[i] - f[i - 1]) / (offsets[i] - offsets[i - level]);
    factorial *= static_cast<double>(level);
    out(row, static_cast<Eigen::Index>(level)) = phase * factorial * f[level];
  }
}

void check_offsets(std::span<const double> offsets) {
  if (offsets.empty() || offsets.front() != 0.0)
    fail(Errc::invalid_argument, "offsets must start at zero");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (!std::isfinite(offsets[i]) || offsets[i] == 0.0)
      fail(Errc::invalid_argument, "offsets must be finite and distinct from the anchor");
}

}  // namespace

namespace serial {

void vandermonde(std::span<const double> x, long long k_first, double scale, ComplexMatrix& out) {
  check_frequencies(k_first, out.rows());
  for (Eigen::Index r = 0; r < out.rows(); ++r) vandermonde_row(x, k_first + r, scale, out, r);
}

void dd_basis(double anchor, std::span<const double> offsets, ComplexMatrix& out) {
  check_offsets(offsets);
  check_frequencies(0, out.rows());
  const DdWorkspace ws = make_workspace(offsets);
  for (Eigen::Index r = 0; r < out.rows(); ++r) dd_row(anchor, offsets, ws, r, out, r);
}

std::vector<double> row_l1_norms(const ComplexMatrix& a) {
  std::vector<double> out(static_cast<std::size_t>(a.rows()), 0.0);
  for (Eigen::Index r = 0; r < a.rows(); ++r) out[r] = a.row(r).cwiseAbs().sum();
  return out;
}

}  // namespace serial

namespace omp {

void vandermonde(std::span<const double> x, long long k_first, double scale, ComplexMatrix& out) {
  check_frequencies(k_first, out.rows());
  const Eigen::Index rows = out.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) vandermonde_row(x, k_first + r, scale, out, r);
}

void dd_basis(double anchor, std::span<const double> offsets, ComplexMatrix& out) {
  check_offsets(offsets);
  check_frequencies(0, out.rows());
  const DdWorkspace ws = make_workspace(offsets);
  const Eigen::Index rows = out.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) dd_row(anchor, offsets, ws, r, out, r);
}

std::vector<double> row_l1_norms(const ComplexMatrix& a) {
  std::vector<double> out(static_cast<std::size_t>(a.rows()), 0.0);
  const Eigen::Index rows = a.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) out[r] = a.row(r).cwiseAbs().sum();
  return out;
}

}  // namespace omp

}  // namespace cvand::kernels
