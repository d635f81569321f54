#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cvand {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Singular values below this fraction of sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-13;

/// Non-increasing, non-negative values.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

Spectrum singular_values(const ComplexMatrix& a);

struct ThinQR {
  ComplexMatrix q;  // rows x cols, orthonormal columns
  ComplexMatrix r;  // cols x cols, upper triangular
};

/// Householder QR, economy size. Throws rank_deficient when a diagonal
/// entry of R falls below kRankTolerance * ||A||.
ThinQR thin_qr(const ComplexMatrix& a);

/// Ascending real eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigs(const ComplexMatrix& h);

/// arg min ||Ax - b||_2 for full-column-rank A.
ComplexVector lstsq_solve(const ComplexMatrix& a, const ComplexVector& b);

ComplexMatrix pseudoinverse(const ComplexMatrix& a);

/// Orthonormal basis of ker A (possibly zero columns).
ComplexMatrix orthonormal_nullspace(const ComplexMatrix& a);

/// Throws invalid_argument for empty or non-finite input.
void require_valid(const ComplexMatrix& a, const char* what);

double max_abs(const ComplexMatrix& a);

}  // namespace cvand
