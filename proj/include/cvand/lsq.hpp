#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cvand/linalg.hpp"
#include "cvand/nodes.hpp"

namespace cvand {

struct RowNormReport {
  std::vector<double> row_l1;           // ||V_N^+||_{l,1}
  std::vector<double> predicted_scale;  // (1/(N h^(j)))^{s^(j)-1} for the row's cluster
  std::vector<std::size_t> cluster;     // cluster of each row (0 without a partition)
};

/// Rows follow the node order. Singleton clusters get scale 1.
RowNormReport pinv_row_l1(const NodeSet& nodes, long long N);

struct RowProductReport {
  std::vector<double> row_l1;  // ||A||_{k,1} for A = BC
  std::vector<double> bound;   // sqrt(p n) ||B||_{k,max} ||C||_F
  bool ok = true;
};

RowProductReport row_norm_product_bound_check(const ComplexMatrix& b, const ComplexMatrix& c);

struct ComponentwiseSolution {
  ComplexVector a;
  std::vector<double> bound_shape;  // s (1/(N h^(j)))^{s^(j)-1}; the constant stays symbolic
};

ComponentwiseSolution componentwise_solve(const NodeSet& nodes, long long N, const ComplexVector& b);

/// Condition number above which double-precision results are flagged.
inline constexpr double kConditionGuard = 1e12;

struct PerturbationResult {
  std::vector<double> delta_a;   // |(a - a0)_l| / ||b - b0||_inf
  std::vector<double> abs_error; // |(a - a0)_l|
  std::vector<double> row_l1;    // ||V^+||_{l,1}
  double noise_inf = 0.0;        // ||b - b0||_inf
  long long N = 0;
  double h = 0.0;                // largest cluster diameter
  double eps = 0.0;
  std::uint64_t seed = 0;
  double condition = 0.0;
  bool in_regime = false;        // condition <= kConditionGuard
  bool holder_ok = true;         // |(a - a0)_l| <= ||V^+||_{l,1} ||b - b0||_inf
};

/// a0, f uniform in [0,1] (real parts; imaginary parts too when complex_noise);
/// b0 = V a0, b = b0 + eps f, a = least-squares solution. eps = 0 gives zero
/// deltas.
PerturbationResult perturbation_experiment(const NodeSet& nodes, long long N, double eps,
                                           std::uint64_t seed, bool complex_noise = false);

}  // namespace cvand
