#include "cvand/vandermonde.hpp"

#include <cmath>
#include <string>

#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"

namespace cvand {

double diameter(const NodeSet& nodes) {
  double d = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) d = std::max(d, wrap_distance(nodes[i], nodes[j]));
  return d;
}

GramSpec make_gram_spec(NodeSet nodes, long long M, double h) {
  if (M < 1) fail(Errc::invalid_argument, "Gram matrix needs M >= 1");
  if (!(h >= 0.0) || !std::isfinite(h)) fail(Errc::invalid_argument, "cluster size must be >= 0");
  const double size = h > 0.0 ? h : diameter(nodes);
  return GramSpec{std::move(nodes), M, size};
}

double GramSpec::epsilon() const { return static_cast<double>(M) * h; }

std::vector<double> GramSpec::y() const {
  std::vector<double> out(nodes.size(), 0.0);
  if (h == 0.0) return out;
  for (std::size_t j = 0; j < nodes.size(); ++j) out[j] = wrap_offset(nodes[0], nodes[j]) / h;
  return out;
}

namespace {

void check_vandermonde_spec(const VandermondeSpec& spec) {
  if (spec.nodes.size() == 0) fail(Errc::invalid_argument, "no nodes");
  if (spec.N < 0 || spec.N + 1 < static_cast<long long>(spec.nodes.size()))
    fail(Errc::invalid_argument, "need N >= s - 1, got N = " + std::to_string(spec.N));
}

}  // namespace

ComplexMatrix build_vandermonde(const VandermondeSpec& spec) {
  check_vandermonde_spec(spec);
  ComplexMatrix v(spec.N + 1, static_cast<Eigen::Index>(spec.nodes.size()));
  kernels::omp::vandermonde(spec.nodes.angles(), 0, 1.0, v);
  return v;
}

ComplexMatrix build_centered(const VandermondeSpec& spec) {
  check_vandermonde_spec(spec);
  if (spec.N < 2 || spec.N % 2 != 0)
    fail(Errc::invalid_argument, "centered Vandermonde needs even N >= 2");
  const long long M = spec.N / 2;
  ComplexMatrix v(2 * M + 1, static_cast<Eigen::Index>(spec.nodes.size()));
  kernels::omp::vandermonde(spec.nodes.angles(), -M, 1.0 / std::sqrt(2.0 * static_cast<double>(M)), v);
  return v;
}

double dirichlet_kernel(double t, long long M) {
  if (M < 0) fail(Errc::invalid_argument, "Dirichlet kernel needs M >= 0");
  const double r = reduce_angle(t);
  const double half_sin = std::sin(0.5 * r);
  const double order = static_cast<double>(2 * M + 1);
  if (std::fabs(half_sin) < 1e-9) {
    // Second-order expansion around the removable singularity.
    const double m = static_cast<double>(M);
    return order - r * r * m * (m + 1.0) * order / 6.0;
  }
  return kernels::unit_phase(2 * M + 1, 0.5 * r).imag() / half_sin;
}

ComplexMatrix gram_matrix(const GramSpec& spec) {
  if (spec.M < 1) fail(Errc::invalid_argument, "Gram matrix needs M >= 1");
  const auto s = static_cast<Eigen::Index>(spec.nodes.size());
  const double scale = 1.0 / (2.0 * static_cast<double>(spec.M));
  ComplexMatrix g(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      g(i, j) = scale * dirichlet_kernel(spec.nodes[i] - spec.nodes[j], spec.M);
  return 0.5 * (g + g.adjoint());
}

double f_moment(long long M, int k) {
  if (M < 1 || k < 0) fail(Errc::invalid_argument, "F(M,k) needs M >= 1 and k >= 0");
  const double m_total = static_cast<double>(M);
  double sum = 0.0;
  for (long long m = M; m >= 1; --m) sum += std::pow(static_cast<double>(m) / m_total, 2 * k);
  const double centre = k == 0 ? 1.0 : 0.0;
  return (centre + 2.0 * sum) / (2.0 * m_total);
}

ComplexMatrix gram_taylor(const GramSpec& spec, int order) {
  if (order < 0) fail(Errc::invalid_argument, "Taylor order must be >= 0");
  const double eps = spec.epsilon();
  if (!(eps < 1.0)) fail(Errc::out_of_regime, "Taylor expansion needs epsilon < 1");
  std::vector<double> moments(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) moments[k] = f_moment(spec.M, k);

  const auto y = spec.y();
  const auto s = static_cast<Eigen::Index>(y.size());
  ComplexMatrix g(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      const double t = eps * (y[i] - y[j]);
      double coef = 1.0;  // (-1)^k t^{2k} / (2k)!
      double sum = moments[0];
      for (int k = 1; k <= order; ++k) {
        coef *= -t * t / (static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
        sum += coef * moments[k];
      }
      g(i, j) = sum;
    }
  }
  return g;
}

}  // namespace cvand
