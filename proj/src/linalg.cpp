#include "cvand/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvand/errors.hpp"

namespace cvand {

void require_valid(const ComplexMatrix& a, const char* what) {
  if (a.size() == 0) fail(Errc::invalid_argument, std::string(what) + " is empty");
  if (!a.allFinite()) fail(Errc::invalid_argument, std::string(what) + " has non-finite entries");
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Spectrum singular_values(const ComplexMatrix& a) {
  require_valid(a, "matrix");
  Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(a);
  const auto& sv = svd.singularValues();
  Spectrum out;
  out.values.assign(sv.data(), sv.data() + sv.size());
  // JacobiSVD already sorts; keep the contract explicit.
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

ThinQR thin_qr(const ComplexMatrix& a) {
  require_valid(a, "matrix");
  const auto rows = a.rows();
  const auto cols = a.cols();
  if (rows < cols) fail(Errc::rank_deficient, "thin QR needs rows >= cols");
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ThinQR out;
  out.r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const double floor = kRankTolerance * a.norm();
  for (Eigen::Index j = 0; j < cols; ++j)
    if (std::abs(out.r(j, j)) <= floor)
      fail(Errc::rank_deficient, "column " + std::to_string(j) + " is numerically dependent");
  out.q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  return out;
}

std::vector<double> hermitian_eigs(const ComplexMatrix& h) {
  require_valid(h, "matrix");
  if (h.rows() != h.cols()) fail(Errc::invalid_argument, "eigenvalues need a square matrix");
  if ((h - h.adjoint()).norm() > 1e-12 * h.norm())
    fail(Errc::invalid_argument, "matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ComplexVector lstsq_solve(const ComplexMatrix& a, const ComplexVector& b) {
  if (b.size() != a.rows()) fail(Errc::invalid_argument, "right-hand side has the wrong length");
  if (!b.allFinite()) fail(Errc::invalid_argument, "right-hand side has non-finite entries");
  const ThinQR qr = thin_qr(a);
  return qr.r.triangularView<Eigen::Upper>().solve(qr.q.adjoint() * b);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& a) {
  const ThinQR qr = thin_qr(a);
  return qr.r.triangularView<Eigen::Upper>().solve(qr.q.adjoint());
}

ComplexMatrix orthonormal_nullspace(const ComplexMatrix& a) {
  require_valid(a, "matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTolerance * smax) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace cvand
