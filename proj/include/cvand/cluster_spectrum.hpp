#pragma once

#include <cstddef>
#include <vector>

#include "cvand/linalg.hpp"
#include "cvand/nodes.hpp"

namespace cvand {

/// y = (x - x_1)/h with epsilon = M h.
struct RescaledCluster {
  std::vector<double> y;
  double epsilon = 0.0;
  long long M = 1;
};

/// h = 0 selects the measured diameter.
RescaledCluster rescale(const NodeSet& cluster, long long M, double h = 0.0);

/// [(y_i - y_j)^k]
ComplexMatrix distance_matrix_power(const std::vector<double>& y, int k);

/// [y_j^k], k = 0..m. m = -1 gives an empty (0 x s) matrix.
ComplexMatrix pm_matrix(const std::vector<double>& y, int m);

/// Nested kernels ker P_{-1} = C^s ⊃ ker P_0 ⊃ ... ⊃ ker P_{s-1} = {0} and
/// the one-dimensional complements M_m of ker P_m inside ker P_{m-1}.
struct KernelChain {
  std::vector<ComplexMatrix> kernels;     // kernels[m + 1] spans ker P_m, m = -1..s-1
  std::vector<ComplexMatrix> complements; // complements[m] spans M_m (s x 1)

  const ComplexMatrix& ker(int m) const { return kernels[static_cast<std::size_t>(m + 1)]; }
  /// Orthonormal basis of Q_m = M_0 ⊕ ... ⊕ M_m.
  ComplexMatrix accumulated(int m) const;
};

/// Minimal gap between rescaled offsets below which the chain is refused.
inline constexpr double kMinRescaledGap = 1e-10;

KernelChain kernel_chain(const std::vector<double>& y);

/// (-1)^m a^H D^{2m} a for a in ker P_{m-1}. Throws precondition when
/// ||P_{m-1} a|| exceeds 1e-10 ||a|| ||P_{m-1}||.
double micchelli_form(const std::vector<double>& y, int m, const ComplexVector& a);

struct GramEigReport {
  double epsilon = 0.0;
  std::vector<double> eigenvalues;  // descending
  std::vector<double> bounds;       // s e eps^{2m}
  double rounding_floor = 0.0;      // 64 eps_mach ||G||
  bool ok = true;
};

/// lambda_{m+1}(G_N) <= s e eps^{2m}, m = 0..s-1, eigenvalues descending.
/// N must be even; h is the measured diameter. Throws out_of_regime when
/// eps >= 1.
GramEigReport gram_eig_upper_check(const NodeSet& cluster, long long N);

struct RestrictedMinimum {
  double mu = 0.0;      // min of a^H G a over unit a in Q_m
  double rho = 0.0;     // the same form on M_m
  double lambda = 0.0;  // lambda_{m+1}(G_N), descending order
  double epsilon = 0.0;
  bool consistent = true;  // mu <= lambda up to rounding
};

RestrictedMinimum restricted_minimum(const NodeSet& cluster, long long N, int m);

/// Regime cap on N h for single-cluster scaling statements.
inline constexpr double kScalingRegimeCap = 0.5;

struct ScalingReport {
  std::vector<double> sigma;       // sigma_j(V_N)
  std::vector<double> normalized;  // sigma_j / (sqrt(N) (N h)^{j-1})
  std::vector<double> upper;       // sqrt(s e N') (N' h / 2)^{j-1}, N' = N rounded up to even
  double h = 0.0;
  bool in_regime = false;
  bool upper_ok = true;  // meaningful only in regime
};

ScalingReport single_cluster_scaling(const NodeSet& cluster, long long N);

struct CensusSample {
  double nh = 0.0;
  std::vector<double> sigma;  // all s singular values, descending
};

struct CensusReport {
  std::vector<std::size_t> expected;  // l_j = #{k : s^(k) >= j}
  std::vector<std::size_t> measured;
  std::vector<double> slopes;         // fitted slope per singular value rank
  std::vector<int> bins;              // scale bin per rank, -1 when unclassified
  bool match = false;
};

/// l_j from the multiplicities alone.
std::vector<std::size_t> expected_census(const std::vector<std::size_t>& multiplicities);

/// Bins every singular-value rank by its log-log slope against N h: bin j-1
/// when the slope lies within 0.5 of j-1. All clusters must share h.
CensusReport multiplicity_census(const ClusterConfig& config, const std::vector<CensusSample>& samples);

}  // namespace cvand
