#include "cvand/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cvand/errors.hpp"
#include "cvand/rng.hpp"

namespace cvand {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(Errc::invalid_argument, std::string(what) + " must be finite");
}

}  // namespace

double reduce_angle(double x) {
  require_finite(x, "angle");
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double wrap_distance(double x, double y) {
  require_finite(x, "angle");
  require_finite(y, "angle");
  return std::fabs(std::remainder(x - y, kTwoPi));
}

double wrap_offset(double x, double y) { return reduce_angle(y - x); }

NodeSet::NodeSet(std::vector<double> angles, std::optional<Partition> partition)
    : angles_(std::move(angles)), partition_(std::move(partition)) {
  for (double& x : angles_) x = reduce_angle(x);
  for (std::size_t i = 0; i < angles_.size(); ++i)
    for (std::size_t j = i + 1; j < angles_.size(); ++j)
      if (wrap_distance(angles_[i], angles_[j]) == 0.0)
        fail(Errc::invalid_argument, "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                         " coincide");
  if (!partition_) return;
  std::vector<bool> seen(angles_.size(), false);
  for (const auto& block : *partition_) {
    if (block.empty()) fail(Errc::invalid_argument, "partition block is empty");
    for (std::size_t idx : block) {
      if (idx >= angles_.size()) fail(Errc::invalid_argument, "partition index out of range");
      if (seen[idx]) fail(Errc::invalid_argument, "partition blocks overlap");
      seen[idx] = true;
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    fail(Errc::invalid_argument, "partition does not cover every node");
}

const Partition& NodeSet::partition() const {
  if (!partition_) fail(Errc::invalid_argument, "node set has no partition");
  return *partition_;
}

std::vector<std::size_t> NodeSet::multiplicities() const {
  std::vector<std::size_t> out;
  for (const auto& block : partition()) out.push_back(block.size());
  return out;
}

std::vector<std::size_t> NodeSet::cluster_of() const {
  std::vector<std::size_t> out(size());
  const auto& p = partition();
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t idx : p[j]) out[idx] = j;
  return out;
}

NodeSet NodeSet::cluster(std::size_t j) const {
  const auto& p = partition();
  if (j >= p.size()) fail(Errc::invalid_argument, "cluster index out of range");
  std::vector<double> xs;
  xs.reserve(p[j].size());
  for (std::size_t idx : p[j]) xs.push_back(angles_[idx]);
  return NodeSet(std::move(xs));
}

NodeSet generate_cluster(double center, double h, std::size_t s, Layout layout,
                         std::uint64_t seed, std::optional<double> tau) {
  require_finite(center, "cluster center");
  require_finite(h, "cluster size h");
  if (s == 0) fail(Errc::invalid_argument, "cluster needs at least one node");
  if (h < 0.0 || h >= kPi) fail(Errc::invalid_argument, "cluster size h must lie in [0, pi)");
  if (tau && !(*tau > 0.0 && *tau <= 1.0))
    fail(Errc::invalid_argument, "tau must lie in (0, 1]");
  if (s == 1) return NodeSet({center});
  if (h == 0.0) fail(Errc::degenerate_cluster, "s >= 2 requires h > 0");

  std::vector<double> xs(s);
  if (layout == Layout::equispaced) {
    const double step_ratio = 1.0 / static_cast<double>(s - 1);
    if (tau && *tau > step_ratio * (1.0 + 1e-12))
      fail(Errc::infeasible_layout, "equispaced layout cannot reach the requested tau");
    for (std::size_t k = 0; k < s; ++k)
      xs[k] = center + h * (static_cast<double>(k) * step_ratio - 0.5);
  } else {
    const double tau_min = tau.value_or(kDefaultTauMin);
    Rng rng(seed);
    bool accepted = false;
    for (int attempt = 0; attempt < kRejectionBudget && !accepted; ++attempt) {
      for (double& x : xs) x = rng.uniform(center - 0.5 * h, center + 0.5 * h);
      std::sort(xs.begin(), xs.end());
      accepted = true;
      for (std::size_t k = 1; k < s && accepted; ++k)
        accepted = xs[k] - xs[k - 1] >= tau_min * h;
    }
    if (!accepted)
      fail(Errc::infeasible_layout, "rejection sampling exhausted its retry budget");
  }
  for (double& x : xs) x = reduce_angle(x);
  std::sort(xs.begin(), xs.end());
  return NodeSet(std::move(xs));
}

void validate(const ClusterConfig& config) {
  if (config.clusters.empty()) fail(Errc::invalid_argument, "configuration has no clusters");
  if (!(std::isfinite(config.theta) && config.theta > 0.0))
    fail(Errc::invalid_argument, "theta must be positive");
  for (const auto& c : config.clusters) {
    require_finite(c.center, "cluster center");
    if (c.s == 0) fail(Errc::invalid_argument, "cluster needs at least one node");
    if (!(c.h >= 0.0 && c.h < kPi)) fail(Errc::invalid_argument, "cluster size h must lie in [0, pi)");
    if (c.s >= 2 && c.h == 0.0) fail(Errc::degenerate_cluster, "s >= 2 requires h > 0");
    if (c.tau && !(*c.tau > 0.0 && *c.tau <= 1.0))
      fail(Errc::invalid_argument, "tau must lie in (0, 1]");
  }
}

NodeSet generate_multi_cluster(const ClusterConfig& config, std::uint64_t seed) {
  validate(config);
  double arc = static_cast<double>(config.clusters.size()) * config.theta;
  for (const auto& c : config.clusters) arc += c.h;
  if (arc > kTwoPi * (1.0 + 1e-12))
    fail(Errc::infeasible_layout, "clusters plus separations exceed the circle");

  std::vector<double> xs;
  Partition partition;
  for (std::size_t j = 0; j < config.clusters.size(); ++j) {
    const auto& c = config.clusters[j];
    const NodeSet cluster = generate_cluster(c.center, c.h, c.s, c.layout, stream_seed(seed, j), c.tau);
    std::vector<std::size_t> block;
    for (double x : cluster.angles()) {
      block.push_back(xs.size());
      xs.push_back(x);
    }
    partition.push_back(std::move(block));
  }

  std::optional<NodeSet> nodes;
  try {
    nodes.emplace(std::move(xs), std::move(partition));
  } catch (const Error& e) {
    fail(Errc::infeasible_layout, std::string("clusters overlap: ") + e.what());
  }
  const ClusterStats stats = measure_stats(*nodes);
  if (stats.theta && *stats.theta < config.theta * (1.0 - 1e-12))
    fail(Errc::infeasible_layout, "cluster centers too close for the requested theta");
  return std::move(*nodes);
}

ClusterStats measure_stats(const NodeSet& nodes) {
  const auto& p = nodes.partition();
  const auto owner = nodes.cluster_of();
  ClusterStats stats;
  stats.h.assign(p.size(), 0.0);
  std::vector<double> min_intra(p.size(), std::numeric_limits<double>::infinity());
  stats.eta = std::numeric_limits<double>::infinity();
  double theta = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t k = i + 1; k < nodes.size(); ++k) {
      const double d = wrap_distance(nodes[i], nodes[k]);
      stats.eta = std::min(stats.eta, d);
      if (owner[i] == owner[k]) {
        stats.h[owner[i]] = std::max(stats.h[owner[i]], d);
        min_intra[owner[i]] = std::min(min_intra[owner[i]], d);
      } else {
        theta = std::min(theta, d);
      }
    }
  }
  for (std::size_t j = 0; j < p.size(); ++j)
    stats.tau.push_back(p[j].size() >= 2 ? std::optional<double>(min_intra[j] / stats.h[j])
                                         : std::nullopt);
  if (p.size() >= 2) stats.theta = theta;
  return stats;
}

bool satisfies(const ClusterStats& stats, const ClusterConfig& config, double rel_tol) {
  if (stats.h.size() != config.clusters.size()) return false;
  if (config.clusters.size() >= 2 && !(stats.theta && *stats.theta >= config.theta * (1.0 - rel_tol)))
    return false;
  for (std::size_t j = 0; j < config.clusters.size(); ++j) {
    const auto& c = config.clusters[j];
    const double slack = rel_tol * c.h + 8.0 * std::numeric_limits<double>::epsilon() *
                                             (std::fabs(c.center) + c.h);
    if (stats.h[j] > c.h + slack) return false;
    if (c.tau && stats.tau[j] && *stats.tau[j] * stats.h[j] < *c.tau * c.h - slack) return false;
  }
  return true;
}

}  // namespace cvand
