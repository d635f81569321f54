#include "cvand/cluster_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvand/errors.hpp"
#include "cvand/fit.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

RescaledCluster rescale(const NodeSet& cluster, long long M, double h) {
  const GramSpec spec = make_gram_spec(cluster, M, h);
  if (cluster.size() >= 2 && spec.h == 0.0) fail(Errc::degenerate_cluster, "cluster has zero size");
  return RescaledCluster{spec.y(), spec.epsilon(), M};
}

ComplexMatrix distance_matrix_power(const std::vector<double>& y, int k) {
  if (k < 0) fail(Errc::invalid_argument, "distance power must be >= 0");
  const auto s = static_cast<Eigen::Index>(y.size());
  ComplexMatrix d(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      d(i, j) = k == 0 ? 1.0 : std::pow(y[i] - y[j], k);
  return d;
}

ComplexMatrix pm_matrix(const std::vector<double>& y, int m) {
  const auto s = static_cast<Eigen::Index>(y.size());
  if (m < -1 || m >= s) fail(Errc::invalid_argument, "P_m needs -1 <= m <= s - 1");
  ComplexMatrix p(m + 1, s);
  for (Eigen::Index j = 0; j < s; ++j) {
    double power = 1.0;
    for (int k = 0; k <= m; ++k) {
      p(k, j) = power;
      power *= y[j];
    }
  }
  return p;
}

ComplexMatrix KernelChain::accumulated(int m) const {
  if (m < 0 || m >= static_cast<int>(complements.size()))
    fail(Errc::invalid_argument, "Q_m needs 0 <= m <= s - 1");
  ComplexMatrix q(complements.front().rows(), m + 1);
  for (int k = 0; k <= m; ++k) q.col(k) = complements[k].col(0);
  return q;
}

KernelChain kernel_chain(const std::vector<double>& y) {
  const auto s = static_cast<Eigen::Index>(y.size());
  if (s == 0) fail(Errc::invalid_argument, "kernel chain needs at least one point");
  for (double v : y)
    if (!std::isfinite(v)) fail(Errc::invalid_argument, "rescaled offsets must be finite");
  std::vector<double> sorted = y;
  std::sort(sorted.begin(), sorted.end());
  for (Eigen::Index i = 1; i < s; ++i)
    if (sorted[i] - sorted[i - 1] < kMinRescaledGap)
      fail(Errc::ill_conditioned, "rescaled offsets closer than 1e-10");

  KernelChain chain;
  chain.kernels.push_back(ComplexMatrix::Identity(s, s));
  for (int m = 0; m < s; ++m) {
    const ComplexMatrix& prev = chain.kernels.back();
    // Row y^m restricted to ker P_{m-1}; its null space there is ker P_m.
    ComplexMatrix row(1, s);
    for (Eigen::Index j = 0; j < s; ++j) row(0, j) = std::pow(y[j], m);
    const ComplexMatrix r = row * prev;
    const double rn = r.norm();
    if (!(rn > 0.0)) fail(Errc::ill_conditioned, "P_m lost full row rank");
    ComplexMatrix next = prev.cols() > 1 ? ComplexMatrix(prev * orthonormal_nullspace(r))
                                         : ComplexMatrix(s, 0);
    ComplexMatrix comp = prev * r.adjoint() / rn;

    const ComplexMatrix lhs = prev * prev.adjoint();
    const ComplexMatrix rhs = next * next.adjoint() + comp * comp.adjoint();
    if ((lhs - rhs).norm() > 1e-10 || next.cols() != prev.cols() - 1)
      fail(Errc::ill_conditioned, "kernel decomposition failed at m = " + std::to_string(m));
    chain.kernels.push_back(std::move(next));
    chain.complements.push_back(std::move(comp));
  }
  return chain;
}

double micchelli_form(const std::vector<double>& y, int m, const ComplexVector& a) {
  const auto s = static_cast<Eigen::Index>(y.size());
  if (a.size() != s) fail(Errc::invalid_argument, "vector length differs from the point count");
  if (m < 0 || m >= s) fail(Errc::invalid_argument, "Micchelli form needs 0 <= m <= s - 1");
  if (m >= 1) {
    const ComplexMatrix p = pm_matrix(y, m - 1);
    if ((p * a).norm() > 1e-10 * a.norm() * std::max(1.0, p.norm()))
      fail(Errc::precondition, "vector is not in ker P_{m-1}");
  }
  const ComplexMatrix d = distance_matrix_power(y, 2 * m);
  const double value = (a.adjoint() * d * a)(0, 0).real();
  return m % 2 == 0 ? value : -value;
}

GramEigReport gram_eig_upper_check(const NodeSet& cluster, long long N) {
  if (N < 2 || N % 2 != 0) fail(Errc::invalid_argument, "Gram bound needs even N >= 2");
  const GramSpec spec = make_gram_spec(cluster, N / 2);
  GramEigReport rep;
  rep.epsilon = spec.epsilon();
  if (!(rep.epsilon < 1.0)) fail(Errc::out_of_regime, "eigenvalue bound needs epsilon < 1");
  const ComplexMatrix g = gram_matrix(spec);
  rep.eigenvalues = descending(hermitian_eigs(g));
  rep.rounding_floor = 64.0 * kEps * g.norm();
  const double s = static_cast<double>(cluster.size());
  for (std::size_t m = 0; m < rep.eigenvalues.size(); ++m) {
    rep.bounds.push_back(s * std::numbers::e * std::pow(rep.epsilon, 2.0 * static_cast<double>(m)));
    if (rep.eigenvalues[m] > rep.bounds[m] * (1.0 + 1e-10) + rep.rounding_floor) rep.ok = false;
  }
  return rep;
}

RestrictedMinimum restricted_minimum(const NodeSet& cluster, long long N, int m) {
  if (N < 2 || N % 2 != 0) fail(Errc::invalid_argument, "restricted minimum needs even N >= 2");
  const auto s = static_cast<int>(cluster.size());
  if (m < 0 || m >= s) fail(Errc::invalid_argument, "restricted minimum needs 0 <= m <= s - 1");
  const GramSpec spec = make_gram_spec(cluster, N / 2);
  RestrictedMinimum rep;
  rep.epsilon = spec.epsilon();
  if (!(rep.epsilon < 1.0)) fail(Errc::out_of_regime, "restricted minimum needs epsilon < 1");
  const ComplexMatrix g = gram_matrix(spec);
  const KernelChain chain = kernel_chain(spec.y());
  const ComplexMatrix q = chain.accumulated(m);
  rep.mu = hermitian_eigs(q.adjoint() * g * q).front();
  const ComplexMatrix& mm = chain.complements[static_cast<std::size_t>(m)];
  rep.rho = (mm.adjoint() * g * mm)(0, 0).real();
  rep.lambda = descending(hermitian_eigs(g))[static_cast<std::size_t>(m)];
  rep.consistent = rep.mu <= rep.lambda * (1.0 + 1e-10) + 64.0 * kEps * g.norm();
  return rep;
}

ScalingReport single_cluster_scaling(const NodeSet& cluster, long long N) {
  const std::size_t s = cluster.size();
  if (N < 1 || N + 1 < static_cast<long long>(s)) fail(Errc::invalid_argument, "need N >= s - 1");
  ScalingReport rep;
  rep.h = diameter(cluster);
  const double n = static_cast<double>(N);
  rep.sigma = singular_values(build_vandermonde({cluster, N})).values;
  rep.in_regime = N >= static_cast<long long>(s) && n * rep.h <= kScalingRegimeCap && (s == 1 || rep.h > 0.0);
  // V_N is a row subset of V_{N+1}, so an odd N borrows the even bound.
  const double n_even = static_cast<double>(N % 2 == 0 ? N : N + 1);
  const double eps = n_even * rep.h / 2.0;
  for (std::size_t j = 0; j < s; ++j) {
    const double scale = std::sqrt(n) * std::pow(n * rep.h, static_cast<double>(j));
    rep.normalized.push_back(scale > 0.0 ? rep.sigma[j] / scale : std::numeric_limits<double>::quiet_NaN());
    rep.upper.push_back(std::sqrt(static_cast<double>(s) * std::numbers::e * n_even) *
                        std::pow(eps, static_cast<double>(j)));
  }
  if (rep.in_regime) {
    const double floor = 64.0 * kEps * rep.sigma.front();
    for (std::size_t j = 0; j < s; ++j)
      if (rep.sigma[j] > rep.upper[j] * (1.0 + 1e-10) + floor) rep.upper_ok = false;
  }
  return rep;
}

std::vector<std::size_t> expected_census(const std::vector<std::size_t>& multiplicities) {
  std::size_t top = 0;
  for (std::size_t m : multiplicities) top = std::max(top, m);
  std::vector<std::size_t> out(top, 0);
  for (std::size_t m : multiplicities)
    for (std::size_t j = 0; j < m; ++j) ++out[j];
  return out;
}

CensusReport multiplicity_census(const ClusterConfig& config, const std::vector<CensusSample>& samples) {
  if (config.clusters.empty()) fail(Errc::invalid_argument, "census needs clusters");
  // Singletons have no size; only the others must agree.
  double h0 = -1.0;
  for (const auto& c : config.clusters)
    if (c.s >= 2 && h0 < 0.0) h0 = c.h;
  for (const auto& c : config.clusters)
    if (c.s >= 2 && std::fabs(c.h - h0) > 1e-12 * std::max(1.0, std::fabs(h0)))
      fail(Errc::invalid_argument, "census needs equal cluster sizes h");

  std::vector<std::size_t> mult;
  std::size_t total = 0;
  for (const auto& c : config.clusters) {
    mult.push_back(c.s);
    total += c.s;
  }
  CensusReport rep;
  rep.expected = expected_census(mult);
  rep.measured.assign(rep.expected.size(), 0);

  std::vector<double> nh;
  for (const auto& smp : samples) {
    if (smp.sigma.size() != total) fail(Errc::invalid_argument, "census sample has the wrong length");
    nh.push_back(smp.nh);
  }
  bool all_binned = true;
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<double> col;
    for (const auto& smp : samples) col.push_back(smp.sigma[i]);
    const double slope = fit_loglog(nh, col).slope;
    rep.slopes.push_back(slope);
    const double nearest = std::round(slope);
    int bin = -1;
    if (std::fabs(slope - nearest) < 0.5 && nearest >= 0.0 &&
        nearest < static_cast<double>(rep.expected.size()))
      bin = static_cast<int>(nearest);
    rep.bins.push_back(bin);
    if (bin < 0) all_binned = false;
    else ++rep.measured[static_cast<std::size_t>(bin)];
  }
  rep.match = all_binned && rep.measured == rep.expected;
  return rep;
}

}  // namespace cvand
