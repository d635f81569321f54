#pragma once

#include <cstddef>

#include "cvand/linalg.hpp"
#include "cvand/nodes.hpp"

namespace cvand {

/// V_N(x): N+1 rows (frequencies 0..N), one column per node.
struct VandermondeSpec {
  NodeSet nodes;
  long long N = 0;
};

/// Single-cluster Gram setting with N = 2M and cluster size h.
struct GramSpec {
  NodeSet nodes;
  long long M = 1;
  double h = 0.0;  // cluster size; 0 selects the measured diameter

  long long N() const { return 2 * M; }
  double epsilon() const;
  /// Rescaled offsets y_j = (x_j - x_1)/h (unwrapped around x_1).
  std::vector<double> y() const;
};

GramSpec make_gram_spec(NodeSet nodes, long long M, double h = 0.0);

/// Largest pairwise wrap-around distance.
double diameter(const NodeSet& nodes);

ComplexMatrix build_vandermonde(const VandermondeSpec& spec);

/// (1/sqrt(2M)) [e^{i k x_j}], k = -M..M. Throws invalid_argument for odd
/// or non-positive N.
ComplexMatrix build_centered(const VandermondeSpec& spec);

/// Dirichlet kernel sum_{k=-M}^{M} e^{ikt}.
double dirichlet_kernel(double t, long long M);

/// (1/2M) [D_M(x_i - x_j)], symmetrized.
ComplexMatrix gram_matrix(const GramSpec& spec);

/// F(M,k) = (1 / (2 M^{2k+1})) sum_{m=-M}^{M} m^{2k}.
double f_moment(long long M, int k);

inline constexpr int kDefaultTaylorOrder = 30;

/// Truncated Taylor expansion of the Gram matrix in epsilon. Requires
/// epsilon < 1.
ComplexMatrix gram_taylor(const GramSpec& spec, int order = kDefaultTaylorOrder);

}  // namespace cvand
