#pragma once

#include <cmath>
#include <complex>

#include "cvand/linalg.hpp"
#include "cvand/rng.hpp"

namespace testing {

using cvand::Complex;
using cvand::ComplexMatrix;

inline ComplexMatrix random_matrix(cvand::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return a;
}

// Naive e^{i k x} matrix straight from the definition.
inline ComplexMatrix naive_vandermonde(const std::vector<double>& x, long long k_lo, long long k_hi) {
  ComplexMatrix v(k_hi - k_lo + 1, static_cast<Eigen::Index>(x.size()));
  for (long long k = k_lo; k <= k_hi; ++k)
    for (std::size_t j = 0; j < x.size(); ++j)
      v(k - k_lo, static_cast<Eigen::Index>(j)) = std::exp(Complex(0.0, static_cast<double>(k) * x[j]));
  return v;
}

inline double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace testing
