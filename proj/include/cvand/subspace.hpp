#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cvand/linalg.hpp"
#include "cvand/nodes.hpp"

namespace cvand {

struct AngleReport {
  double min_angle = 0.0;  // radians, [0, pi/2]
  double beta = 0.0;       // pi/2 - min_angle
  std::pair<std::size_t, std::size_t> pair{0, 0};
};

/// Minimal principal angle between the column spans of A and B.
/// beta is computed as asin(sigma_max(Q_A^H Q_B)) so that small
/// complementary angles keep full relative accuracy; small minimal angles
/// come from the sine of the projection residual instead.
AngleReport principal_angle_min(const ComplexMatrix& a, const ComplexMatrix& b);

struct AngleMatrix {
  std::vector<AngleReport> reports;  // j < k, lexicographic
  double alpha = 0.0;                // max beta over all pairs
};

/// Pairwise angles between cluster subspaces L(c^(j), N). Each subspace is
/// represented by the column-normalized divided-difference basis, which has
/// the same span as the Vandermonde block but stays well conditioned for tiny h.
AngleMatrix cluster_angle_matrix(const NodeSet& nodes, long long N);

/// One observation for the angle model beta ~ a/(N theta) + b N h.
struct AngleSample {
  long long N = 0;
  double theta = 0.0;  // measured cross-cluster separation
  double h = 0.0;      // largest measured cluster diameter
  double beta = 0.0;
};

AngleSample angle_bound_check(const NodeSet& nodes, long long N);

struct AngleModelFit {
  double a = 0.0;
  double b = 0.0;
  double rms_relative_residual = 0.0;
  std::size_t samples = 0;
};

/// Least squares in relative residuals: min sum ((a x1 + b x2 - beta)/beta)^2
/// with x1 = 1/(N theta), x2 = N h.
AngleModelFit fit_angle_model(const std::vector<AngleSample>& samples);

struct BlockQR {
  ComplexMatrix q;                       // [Q_1, ..., Q_M]
  std::vector<ComplexMatrix> r_blocks;   // R_j
  std::vector<std::size_t> column_order; // node index of each column of q
};

/// Per-cluster thin QR of V_N(c^(j)). Without a partition the whole node
/// set is one block.
BlockQR block_qr(const NodeSet& nodes, long long N);

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks);

enum class BoundStatus { holds, violated, not_applicable };

const char* to_string(BoundStatus status);

struct SpectrumReport {
  Spectrum full;   // sigma_j(V_N(x))
  Spectrum pooled; // sigma~_j from the cluster blocks, non-increasing
  double alpha = 0.0;
  std::vector<double> ratios;  // sigma_j / sigma~_j
  double lower_factor = 0.0;   // sqrt(1 - s alpha)
  double upper_factor = 0.0;   // sqrt(1 + s alpha)
  BoundStatus bounds = BoundStatus::not_applicable;
};

/// Compares the full spectrum with the pooled per-cluster spectra using the
/// measured alpha. Bounds are checked only when s alpha <= 1; the check allows
/// a rounding floor of 64 eps sigma_max on each side.
SpectrumReport union_spectrum_compare(const NodeSet& nodes, long long N);

struct ProductBoundReport {
  std::vector<double> sigma_c, lower, upper;
  bool ok = true;
};

/// sigma_min(B) sigma_j(A) <= sigma_j(BA) <= sigma_max(B) sigma_j(A) for B
/// with at least as many rows as columns.
ProductBoundReport product_bounds_check(const ComplexMatrix& b, const ComplexMatrix& a,
                                        double rel_tol = 1e-10);

}  // namespace cvand
