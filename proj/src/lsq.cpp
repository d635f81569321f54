#include "cvand/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"
#include "cvand/rng.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

namespace {

struct ClusterScales {
  std::vector<std::size_t> owner;
  std::vector<double> h;
  std::vector<std::size_t> size;
};

ClusterScales cluster_scales(const NodeSet& nodes) {
  ClusterScales out;
  if (!nodes.has_partition()) {
    out.owner.assign(nodes.size(), 0);
    out.h.push_back(diameter(nodes));
    out.size.push_back(nodes.size());
    return out;
  }
  out.owner = nodes.cluster_of();
  for (std::size_t j = 0; j < nodes.cluster_count(); ++j) {
    const NodeSet c = nodes.cluster(j);
    out.h.push_back(diameter(c));
    out.size.push_back(c.size());
  }
  return out;
}

double scale_for(const ClusterScales& cs, std::size_t j, long long N) {
  if (cs.size[j] <= 1) return 1.0;
  return std::pow(1.0 / (static_cast<double>(N) * cs.h[j]), static_cast<double>(cs.size[j] - 1));
}

void check_size(const NodeSet& nodes, long long N) {
  if (nodes.size() == 0) fail(Errc::invalid_argument, "no nodes");
  if (N < 1 || N + 1 < static_cast<long long>(nodes.size()))
    fail(Errc::invalid_argument, "need N >= s - 1");
}

}  // namespace

RowNormReport pinv_row_l1(const NodeSet& nodes, long long N) {
  check_size(nodes, N);
  const ComplexMatrix pinv = pseudoinverse(build_vandermonde({nodes.without_partition(), N}));
  const ClusterScales cs = cluster_scales(nodes);
  RowNormReport rep;
  rep.row_l1 = kernels::omp::row_l1_norms(pinv);
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    rep.cluster.push_back(cs.owner[l]);
    rep.predicted_scale.push_back(scale_for(cs, cs.owner[l], N));
  }
  return rep;
}

RowProductReport row_norm_product_bound_check(const ComplexMatrix& b, const ComplexMatrix& c) {
  if (b.cols() != c.rows()) fail(Errc::invalid_argument, "row-norm bound needs conformable B and C");
  require_valid(b, "B");
  require_valid(c, "C");
  const ComplexMatrix a = b * c;
  const double root = std::sqrt(static_cast<double>(b.cols()) * static_cast<double>(c.cols()));
  const double cf = c.norm();
  RowProductReport rep;
  rep.row_l1 = kernels::serial::row_l1_norms(a);
  for (Eigen::Index k = 0; k < b.rows(); ++k) {
    rep.bound.push_back(root * b.row(k).cwiseAbs().maxCoeff() * cf);
    if (rep.row_l1[k] > rep.bound.back() * (1.0 + 1e-10)) rep.ok = false;
  }
  return rep;
}

ComponentwiseSolution componentwise_solve(const NodeSet& nodes, long long N, const ComplexVector& b) {
  check_size(nodes, N);
  ComponentwiseSolution out;
  out.a = lstsq_solve(build_vandermonde({nodes.without_partition(), N}), b);
  const ClusterScales cs = cluster_scales(nodes);
  for (std::size_t l = 0; l < nodes.size(); ++l)
    out.bound_shape.push_back(static_cast<double>(nodes.size()) * scale_for(cs, cs.owner[l], N));
  return out;
}

PerturbationResult perturbation_experiment(const NodeSet& nodes, long long N, double eps,
                                           std::uint64_t seed, bool complex_noise) {
  check_size(nodes, N);
  if (!(eps >= 0.0) || !std::isfinite(eps)) fail(Errc::invalid_argument, "noise level must be >= 0");
  const ComplexMatrix v = build_vandermonde({nodes.without_partition(), N});
  const auto s = v.cols();
  const auto rows = v.rows();

  Rng rng(seed);
  auto draw = [&] {
    const double re = rng.uniform01();
    return Complex(re, complex_noise ? rng.uniform01() : 0.0);
  };
  ComplexVector a0(s), f(rows);
  for (Eigen::Index i = 0; i < s; ++i) a0(i) = draw();
  for (Eigen::Index i = 0; i < rows; ++i) f(i) = draw();

  const ComplexVector b0 = v * a0;
  const ComplexVector b = b0 + eps * f;
  const ComplexVector a = lstsq_solve(v, b);

  PerturbationResult res;
  res.N = N;
  res.eps = eps;
  res.seed = seed;
  const ClusterScales cs = cluster_scales(nodes);
  res.h = *std::max_element(cs.h.begin(), cs.h.end());
  const Spectrum sv = singular_values(v);
  res.condition = sv.max() / sv.min();
  res.in_regime = res.condition <= kConditionGuard;
  res.noise_inf = (b - b0).cwiseAbs().maxCoeff();
  res.row_l1 = kernels::omp::row_l1_norms(pseudoinverse(v));

  // The Hoelder step bounds the solve of the exact data perturbation; the
  // computed a also carries the backward error of solving with b0 itself,
  // which is absorbed by a rounding allowance proportional to the condition.
  const double allowance = 64.0 * std::numeric_limits<double>::epsilon() * res.condition *
                           std::max(1.0, a0.cwiseAbs().maxCoeff());
  for (Eigen::Index l = 0; l < s; ++l) {
    const double err = std::abs(a(l) - a0(l));
    res.abs_error.push_back(err);
    res.delta_a.push_back(res.noise_inf > 0.0 ? err / res.noise_inf : 0.0);
    if (err > res.row_l1[l] * res.noise_inf * (1.0 + 1e-10) + allowance) res.holder_ok = false;
  }
  return res;
}

}  // namespace cvand
