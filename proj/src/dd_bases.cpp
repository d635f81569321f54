#include "cvand/dd_bases.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

DividedDifferenceTable divided_difference_table(std::span<const double> points,
                                                const ComplexFunction& f) {
  if (points.empty()) fail(Errc::invalid_argument, "divided difference needs at least one point");
  DividedDifferenceTable table;
  table.points.assign(points.begin(), points.end());
  for (double t : table.points)
    if (!std::isfinite(t)) fail(Errc::invalid_argument, "points must be finite");
  std::sort(table.points.begin(), table.points.end());
  for (std::size_t i = 1; i < table.points.size(); ++i)
    if (table.points[i] - table.points[i - 1] < kMinPointSpacing)
      fail(Errc::invalid_argument, "points closer than 1e-12 (confluent case not supported)");

  const std::size_t n = table.points.size();
  std::vector<Complex> first(n);
  for (std::size_t i = 0; i < n; ++i) first[i] = f(table.points[i]);
  table.columns.push_back(std::move(first));
  for (std::size_t level = 1; level < n; ++level) {
    const auto& prev = table.columns.back();
    std::vector<Complex> next(n - level);
    for (std::size_t i = 0; i + level < n; ++i)
      next[i] = (prev[i + 1] - prev[i]) / (table.points[i + level] - table.points[i]);
    table.columns.push_back(std::move(next));
  }
  return table;
}

Complex divided_difference(std::span<const double> points, const ComplexFunction& f) {
  return divided_difference_table(points, f).top();
}

ComplexMatrix dd_basis(const NodeSet& cluster, long long N) {
  const std::size_t s = cluster.size();
  if (s == 0) fail(Errc::invalid_argument, "empty cluster");
  if (N < 0 || N + 1 < static_cast<long long>(s)) fail(Errc::invalid_argument, "need N >= s - 1");
  std::vector<double> offsets(s);
  for (std::size_t j = 0; j < s; ++j) offsets[j] = j == 0 ? 0.0 : wrap_offset(cluster[0], cluster[j]);
  ComplexMatrix w(N + 1, static_cast<Eigen::Index>(s));
  kernels::omp::dd_basis(cluster[0], offsets, w);
  return w;
}

ComplexMatrix limit_basis(double zeta, long long N, std::size_t s) {
  if (s == 0) fail(Errc::invalid_argument, "limit basis needs s >= 1");
  if (N < 0 || N + 1 < static_cast<long long>(s)) fail(Errc::invalid_argument, "need N >= s - 1");
  const double anchor = reduce_angle(zeta);
  ComplexMatrix u(N + 1, static_cast<Eigen::Index>(s));
  for (long long k = 0; k <= N; ++k) {
    const Complex phase = kernels::unit_phase(k, anchor);
    const Complex ik(0.0, static_cast<double>(k));
    Complex factor(1.0, 0.0);
    for (std::size_t j = 0; j < s; ++j) {
      u(k, static_cast<Eigen::Index>(j)) = factor * phase;
      factor *= ik;
    }
  }
  return u;
}

ComplexMatrix normalize_columns(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double n = out.col(j).norm();
    if (n == 0.0) fail(Errc::rank_deficient, "zero column cannot be normalized");
    out.col(j) /= n;
  }
  return out;
}

BasisMatrices basis_matrices(const NodeSet& cluster, long long N, std::optional<double> zeta) {
  BasisMatrices b;
  b.w = dd_basis(cluster, N);
  b.u = limit_basis(zeta.value_or(cluster[0]), N, cluster.size());
  b.w_normalized = normalize_columns(b.w);
  b.u_normalized = normalize_columns(b.u);
  return b;
}

ColumnNormReport column_norm_bounds_check(const ComplexMatrix& u, long long N, std::size_t s) {
  if (N < 1) fail(Errc::invalid_argument, "column norm bounds need N >= 1");
  if (static_cast<std::size_t>(u.cols()) > s) fail(Errc::invalid_argument, "more columns than s");
  ColumnNormReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(N);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double power = std::pow(n, static_cast<double>(j) + 0.5);
    const double lower = power / std::sqrt(2.0 * static_cast<double>(s) - 1.0);
    const double upper = j == 0 ? std::sqrt(n + 1.0) : power;
    const double norm = u.col(j).norm();
    rep.norms.push_back(norm);
    rep.lower.push_back(lower);
    rep.upper.push_back(upper);
    const double margin = std::min((norm - lower) / lower, (upper - norm) / upper);
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-12) rep.ok = false;
  }
  return rep;
}

DeviationReport basis_deviation_check(const NodeSet& cluster, long long N) {
  const BasisMatrices b = basis_matrices(cluster, N);
  DeviationReport rep;
  rep.h = diameter(cluster);
  rep.bound = 2.0 * std::sqrt(2.0) * static_cast<double>(N) * rep.h;
  for (Eigen::Index j = 0; j < b.w.cols(); ++j) {
    const double d = (b.u_normalized.col(j) - b.w_normalized.col(j)).norm();
    rep.deviations.push_back(d);
    rep.max_deviation = std::max(rep.max_deviation, d);
  }
  rep.ok = rep.max_deviation <= rep.bound * (1.0 + 1e-10) + 1e-14;
  return rep;
}

ComplexMatrix hilbert_normalized(std::size_t s) {
  if (s == 0) fail(Errc::invalid_argument, "Hilbert matrix needs s >= 1");
  const auto n = static_cast<Eigen::Index>(s);
  ComplexMatrix h(n, n);
  for (Eigen::Index j = 1; j <= n; ++j)
    for (Eigen::Index l = 1; l <= n; ++l)
      h(j - 1, l - 1) = std::sqrt(2.0 * j - 1.0) * std::sqrt(2.0 * l - 1.0) / static_cast<double>(j + l - 1);
  return h;
}

LimitConditioning limit_conditioning_check(double zeta, long long N, std::size_t s) {
  LimitConditioning rep;
  rep.sigma_min = singular_values(normalize_columns(limit_basis(zeta, N, s))).min();
  rep.lambda_min_hilbert = hermitian_eigs(hilbert_normalized(s)).front();
  rep.xi = std::sqrt(rep.lambda_min_hilbert / 2.0);
  rep.gap = std::fabs(rep.sigma_min - std::sqrt(rep.lambda_min_hilbert));
  rep.exceeds_xi = rep.sigma_min >= rep.xi;
  return rep;
}

InnerProductReport limit_inner_product_check(double zeta1, std::size_t s1, double zeta2,
                                             std::size_t s2, long long N) {
  const double delta = wrap_distance(zeta1, zeta2);
  if (delta == 0.0) fail(Errc::invalid_argument, "anchors must be distinct");
  if (N < 1 || N + 1 < static_cast<long long>(std::max(s1, s2)))
    fail(Errc::invalid_argument, "need N >= max(s1, s2) - 1 and N >= 1");
  const ComplexMatrix z1 = normalize_columns(limit_basis(zeta1, N, s1));
  const ComplexMatrix z2 = normalize_columns(limit_basis(zeta2, N, s2));
  InnerProductReport rep;
  rep.max_inner = max_abs(z1.adjoint() * z2);
  rep.bound = kPi * std::sqrt((2.0 * s1 - 1.0) * (2.0 * s2 - 1.0)) / (delta * static_cast<double>(N));
  rep.ok = rep.max_inner <= rep.bound * (1.0 + 1e-10);
  return rep;
}

}  // namespace cvand
