#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial loop
// kept as the reference, and an OpenMP version that must reproduce it
// bit for bit (every output element is computed independently).

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "cvand/linalg.hpp"

namespace cvand::kernels {

/// e^{i k x} for |x| <= pi and |k| <= 2^30. The argument is split as
/// x = a + d with a on a 2^-20 grid, so k*a is exact and k*d carries a
/// negligible rounding error; the result is accurate to a few ulps even
/// when |k x| is large.
Complex unit_phase(long long k, double x);

/// Largest |k| supported by unit_phase.
inline constexpr long long kMaxFrequency = 1LL << 30;

namespace serial {

/// out(r, j) = e^{i (k_first + r) x_j}, scaled by `scale`.
void vandermonde(std::span<const double> x, long long k_first, double scale, ComplexMatrix& out);

/// Rows k = 0..rows-1 of the divided-difference basis of the distinct
/// points anchor + offsets (offsets[0] == 0, |offsets| < pi):
/// out(k, j) = j! [t_0..t_j] e^{i k t}.
void dd_basis(double anchor, std::span<const double> offsets, ComplexMatrix& out);

std::vector<double> row_l1_norms(const ComplexMatrix& a);

}  // namespace serial

namespace omp {

void vandermonde(std::span<const double> x, long long k_first, double scale, ComplexMatrix& out);
void dd_basis(double anchor, std::span<const double> offsets, ComplexMatrix& out);
std::vector<double> row_l1_norms(const ComplexMatrix& a);

}  // namespace omp

/// Runs f(i) for i in [0, n). threads <= 1 is a plain loop; otherwise an
/// OpenMP dynamic schedule. The first exception thrown by any iteration is
/// rethrown after the loop.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace cvand::kernels
