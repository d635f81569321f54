#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cvand/linalg.hpp"
#include "cvand/nodes.hpp"

namespace cvand {

/// Newton divided-difference table over distinct points sorted ascending.
/// column(l)[i] = [t_i, ..., t_{i+l}] f.
struct DividedDifferenceTable {
  std::vector<double> points;
  std::vector<std::vector<Complex>> columns;

  Complex top() const { return columns.back().front(); }
};

using ComplexFunction = std::function<Complex(double)>;

/// Points closer than this are rejected by the recursion.
inline constexpr double kMinPointSpacing = 1e-12;

DividedDifferenceTable divided_difference_table(std::span<const double> points,
                                                const ComplexFunction& f);

/// [t_1, ..., t_n] f via the recursive rule; symmetric in the points.
Complex divided_difference(std::span<const double> points, const ComplexFunction& f);

/// Divided-difference basis W of one cluster: column j (0-based) is
/// j! [x_1..x_{j+1}] v_N(x). The cluster is unwrapped around its first node
/// and evaluated with an exponential-specific series, so tiny clusters
/// (N h far below 1) stay accurate.
ComplexMatrix dd_basis(const NodeSet& cluster, long long N);

/// Limit basis U(zeta, N, s): entry (k, j) = (ik)^j e^{ik zeta}.
ComplexMatrix limit_basis(double zeta, long long N, std::size_t s);

/// Scales every column to unit Euclidean norm.
ComplexMatrix normalize_columns(const ComplexMatrix& a);

struct BasisMatrices {
  ComplexMatrix w, u, w_normalized, u_normalized;
};

/// W and U for one cluster with anchor zeta = x_1 (or the override).
BasisMatrices basis_matrices(const NodeSet& cluster, long long N, std::optional<double> zeta = {});

struct ColumnNormReport {
  std::vector<double> norms, lower, upper;
  bool ok = true;
  double worst_margin = 0.0;  // min over j of the relative slack to the nearer bound
};

/// N^{j-1/2}/sqrt(2s-1) <= ||u_j|| <= N^{j-1/2} for j >= 2; for j = 1 the
/// upper bound is sqrt(N+1) since ||u_1||^2 = N + 1.
ColumnNormReport column_norm_bounds_check(const ComplexMatrix& u, long long N, std::size_t s);

struct DeviationReport {
  std::vector<double> deviations;  // ||u~_j - w~_j||
  double max_deviation = 0.0;
  double bound = 0.0;              // 2 sqrt(2) N h
  double h = 0.0;
  bool ok = true;
};

DeviationReport basis_deviation_check(const NodeSet& cluster, long long N);

/// Normalized Hilbert matrix: sqrt(2j-1) sqrt(2l-1) / (j+l-1), 1-based.
ComplexMatrix hilbert_normalized(std::size_t s);

struct LimitConditioning {
  double sigma_min = 0.0;
  double lambda_min_hilbert = 0.0;
  double xi = 0.0;   // sqrt(lambda_min / 2)
  double gap = 0.0;  // |sigma_min - sqrt(lambda_min)|
  bool exceeds_xi = false;
};

LimitConditioning limit_conditioning_check(double zeta, long long N, std::size_t s);

struct InnerProductReport {
  double max_inner = 0.0;
  double bound = 0.0;
  bool ok = true;
};

/// Largest |<z1, z2>| over normalized limit vectors at two distinct anchors,
/// against pi sqrt((2 s1 - 1)(2 s2 - 1)) / (Delta(zeta1, zeta2) N).
InnerProductReport limit_inner_product_check(double zeta1, std::size_t s1, double zeta2,
                                             std::size_t s2, long long N);

}  // namespace cvand
