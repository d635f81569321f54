#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace cvand {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into (-pi, pi].
double reduce_angle(double x);

/// Wrap-around (arc) distance on the circle, in [0, pi].
double wrap_distance(double x, double y);

/// Signed offset y - x reduced into (-pi, pi]. Used to unwrap a cluster
/// around an anchor node.
double wrap_offset(double x, double y);

using Partition = std::vector<std::vector<std::size_t>>;

/// Distinct angles on the circle, stored reduced into (-pi, pi], with an
/// optional partition into clusters (zero-based indices).
class NodeSet {
 public:
  explicit NodeSet(std::vector<double> angles, std::optional<Partition> partition = std::nullopt);

  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  double operator[](std::size_t i) const { return angles_[i]; }

  bool has_partition() const { return partition_.has_value(); }
  const Partition& partition() const;
  std::size_t cluster_count() const { return partition_ ? partition_->size() : 0; }
  /// Cluster sizes s^{(j)} in partition order.
  std::vector<std::size_t> multiplicities() const;
  /// Cluster index of every node.
  std::vector<std::size_t> cluster_of() const;

  /// The nodes of cluster j, in stored order, without a partition.
  NodeSet cluster(std::size_t j) const;

  /// Same nodes, partition dropped.
  NodeSet without_partition() const { return NodeSet(angles_); }

 private:
  std::vector<double> angles_;
  std::optional<Partition> partition_;
};

enum class Layout { equispaced, uniform_random };

struct ClusterSpec {
  double center = 0.0;
  double h = 0.0;
  std::optional<double> tau;  // required minimal ratio; uniform layout defaults to kDefaultTauMin
  std::size_t s = 1;
  Layout layout = Layout::equispaced;
};

struct ClusterConfig {
  std::vector<ClusterSpec> clusters;
  double theta = 0.0;
};

inline constexpr double kDefaultTauMin = 0.05;
inline constexpr int kRejectionBudget = 10000;

/// s nodes inside the arc [center - h/2, center + h/2], ascending.
/// Equispaced nodes sit at center + h (k/(s-1) - 1/2).
NodeSet generate_cluster(double center, double h, std::size_t s, Layout layout,
                         std::uint64_t seed, std::optional<double> tau = std::nullopt);

void validate(const ClusterConfig& config);

/// Concatenates the clusters in config order and records the partition.
/// Fails with infeasible_layout when the result does not honour theta.
NodeSet generate_multi_cluster(const ClusterConfig& config, std::uint64_t seed);

struct ClusterStats {
  std::vector<double> h;                   // max intra-cluster distance (0 for singletons)
  std::vector<std::optional<double>> tau;  // min/max intra distance; empty for singletons
  std::optional<double> theta;             // min cross-cluster distance; empty for M = 1
  double eta = 0.0;                        // global minimal separation
};

ClusterStats measure_stats(const NodeSet& nodes);

/// True if the measured stats honour the configuration: theta respected,
/// every cluster inside its arc and above its tau.
bool satisfies(const ClusterStats& stats, const ClusterConfig& config, double rel_tol = 1e-12);

}  // namespace cvand
