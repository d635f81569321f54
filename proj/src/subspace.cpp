#include "cvand/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvand/dd_bases.hpp"
#include "cvand/errors.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

AngleReport principal_angle_min(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) fail(Errc::invalid_argument, "subspaces live in different dimensions");
  const ComplexMatrix qa = thin_qr(a).q;
  const ComplexMatrix qb = thin_qr(b).q;
  const double c = std::clamp(singular_values(qa.adjoint() * qb).max(), 0.0, 1.0);
  AngleReport rep;
  if (c <= std::sqrt(0.5)) {
    rep.beta = std::asin(c);
    rep.min_angle = kPi / 2.0 - rep.beta;
    return rep;
  }
  // Near-intersecting spans: the cosine is flat there, take the sine from the
  // residual of the smaller basis against the larger one.
  const bool a_big = qa.cols() >= qb.cols();
  const ComplexMatrix& big = a_big ? qa : qb;
  const ComplexMatrix& small = a_big ? qb : qa;
  const ComplexMatrix resid = small - big * (big.adjoint() * small);
  rep.min_angle = std::asin(std::clamp(singular_values(resid).min(), 0.0, 1.0));
  rep.beta = kPi / 2.0 - rep.min_angle;
  return rep;
}

namespace {

std::vector<ComplexMatrix> cluster_bases(const NodeSet& nodes, long long N) {
  std::vector<ComplexMatrix> out;
  for (std::size_t j = 0; j < nodes.cluster_count(); ++j)
    out.push_back(thin_qr(normalize_columns(dd_basis(nodes.cluster(j), N))).q);
  return out;
}

double max_cosine(const ComplexMatrix& qa, const ComplexMatrix& qb) {
  return std::clamp(singular_values(qa.adjoint() * qb).max(), 0.0, 1.0);
}

}  // namespace

AngleMatrix cluster_angle_matrix(const NodeSet& nodes, long long N) {
  if (nodes.cluster_count() < 2) fail(Errc::invalid_argument, "angle matrix needs at least two clusters");
  const auto bases = cluster_bases(nodes, N);
  AngleMatrix out;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    for (std::size_t k = j + 1; k < bases.size(); ++k) {
      AngleReport rep;
      rep.beta = std::asin(max_cosine(bases[j], bases[k]));
      rep.min_angle = kPi / 2.0 - rep.beta;
      rep.pair = {j, k};
      out.alpha = std::max(out.alpha, rep.beta);
      out.reports.push_back(rep);
    }
  }
  return out;
}

AngleSample angle_bound_check(const NodeSet& nodes, long long N) {
  const ClusterStats stats = measure_stats(nodes);
  AngleSample sample;
  sample.N = N;
  sample.theta = stats.theta.value_or(0.0);
  sample.h = *std::max_element(stats.h.begin(), stats.h.end());
  sample.beta = cluster_angle_matrix(nodes, N).alpha;
  return sample;
}

AngleModelFit fit_angle_model(const std::vector<AngleSample>& samples) {
  if (samples.size() < 2) fail(Errc::invalid_argument, "angle model needs at least two samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!(s.beta > 0.0) || !(s.theta > 0.0) || s.N < 1)
      fail(Errc::invalid_argument, "angle samples need beta > 0, theta > 0, N >= 1");
    const double nd = static_cast<double>(s.N);
    design(i, 0) = 1.0 / (nd * s.theta) / s.beta;
    design(i, 1) = nd * s.h / s.beta;
    rhs(i) = 1.0;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  AngleModelFit fit;
  fit.a = coef(0);
  fit.b = coef(1);
  fit.rms_relative_residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  fit.samples = samples.size();
  return fit;
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out = ComplexMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

BlockQR block_qr(const NodeSet& nodes, long long N) {
  Partition blocks;
  if (nodes.has_partition()) {
    blocks = nodes.partition();
  } else {
    blocks.emplace_back(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) blocks[0][i] = i;
  }
  BlockQR out;
  out.q.resize(N + 1, static_cast<Eigen::Index>(nodes.size()));
  Eigen::Index col = 0;
  for (const auto& block : blocks) {
    std::vector<double> xs;
    for (std::size_t idx : block) {
      xs.push_back(nodes[idx]);
      out.column_order.push_back(idx);
    }
    const ThinQR qr = thin_qr(build_vandermonde({NodeSet(std::move(xs)), N}));
    out.q.middleCols(col, qr.q.cols()) = qr.q;
    col += qr.q.cols();
    out.r_blocks.push_back(qr.r);
  }
  return out;
}

const char* to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::holds: return "holds";
    case BoundStatus::violated: return "violated";
    case BoundStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

SpectrumReport union_spectrum_compare(const NodeSet& nodes, long long N) {
  SpectrumReport rep;
  rep.full = singular_values(build_vandermonde({nodes.without_partition(), N}));
  const std::size_t clusters = nodes.has_partition() ? nodes.cluster_count() : 1;
  if (clusters <= 1) {
    rep.pooled = rep.full;
  } else {
    for (std::size_t j = 0; j < clusters; ++j) {
      const Spectrum sj = singular_values(build_vandermonde({nodes.cluster(j), N}));
      rep.pooled.values.insert(rep.pooled.values.end(), sj.values.begin(), sj.values.end());
    }
    std::stable_sort(rep.pooled.values.begin(), rep.pooled.values.end(), std::greater<>());
    rep.alpha = cluster_angle_matrix(nodes, N).alpha;
  }

  const double s = static_cast<double>(nodes.size());
  for (std::size_t j = 0; j < rep.full.size(); ++j) rep.ratios.push_back(rep.full[j] / rep.pooled[j]);
  if (s * rep.alpha > 1.0) {
    rep.bounds = BoundStatus::not_applicable;
    return rep;
  }
  rep.lower_factor = std::sqrt(1.0 - s * rep.alpha);
  rep.upper_factor = std::sqrt(1.0 + s * rep.alpha);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * rep.full.max();
  rep.bounds = BoundStatus::holds;
  for (std::size_t j = 0; j < rep.full.size(); ++j) {
    const double lo = rep.lower_factor * rep.pooled[j] * (1.0 - 1e-10) - floor;
    const double hi = rep.upper_factor * rep.pooled[j] * (1.0 + 1e-10) + floor;
    if (rep.full[j] < lo || rep.full[j] > hi) rep.bounds = BoundStatus::violated;
  }
  return rep;
}

ProductBoundReport product_bounds_check(const ComplexMatrix& b, const ComplexMatrix& a, double rel_tol) {
  if (b.cols() != a.rows()) fail(Errc::invalid_argument, "product bounds need conformable B and A");
  if (b.rows() < b.cols()) fail(Errc::invalid_argument, "product bounds need B with rows >= cols");
  const Spectrum sb = singular_values(b);
  const Spectrum sa = singular_values(a);
  const Spectrum sc = singular_values(b * a);
  ProductBoundReport rep;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * sb.max() * sa.max();
  for (std::size_t j = 0; j < std::min(sa.size(), sc.size()); ++j) {
    rep.sigma_c.push_back(sc[j]);
    rep.lower.push_back(sb.min() * sa[j]);
    rep.upper.push_back(sb.max() * sa[j]);
    if (sc[j] < rep.lower.back() * (1.0 - rel_tol) - floor ||
        sc[j] > rep.upper.back() * (1.0 + rel_tol) + floor)
      rep.ok = false;
  }
  return rep;
}

}  // namespace cvand
