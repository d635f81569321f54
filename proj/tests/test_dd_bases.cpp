#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cvand/dd_bases.hpp"
#include "cvand/errors.hpp"
#include "cvand/vandermonde.hpp"
#include "helpers.hpp"

using namespace cvand;

namespace {

Complex explicit_dd(const std::vector<double>& t, const ComplexFunction& f) {
  Complex acc = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    double d = 1;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (k != j) d *= t[j] - t[k];
    acc += f(t[j]) / d;
  }
  return acc;
}

// Leading Newton coefficient from the interpolation system itself.
Complex leading_coefficient(const std::vector<double>& t, const ComplexFunction& f) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd a(n, n);
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::pow(t[static_cast<std::size_t>(i)], static_cast<double>(j));
    b(i) = f(t[static_cast<std::size_t>(i)]);
  }
  return a.fullPivLu().solve(b)(n - 1);
}

ComplexMatrix projector(const ComplexMatrix& a) {
  const ThinQR q = thin_qr(normalize_columns(a));
  return q.q * q.q.adjoint();
}

}  // namespace

TEST_CASE("divided difference examples") {
  const auto sq = [](double t) { return Complex(t * t, 0); };
  CHECK(divided_difference(std::vector<double>{0.3}, sq) == Complex(0.09, 0));
  CHECK(std::abs(divided_difference(std::vector<double>{0.0, 1.0}, sq) - 1.0) <= 1e-15);
  CHECK(std::abs(divided_difference(std::vector<double>{0.0, 1.0, 2.0}, sq) - 1.0) <= 1e-15);
  CHECK_THROWS_AS(divided_difference(std::vector<double>{0.0, 1e-13}, sq), Error);
}

TEST_CASE("divided differences: symmetry, explicit form, interpolation oracle") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    std::vector<double> pts;
    while (pts.size() < n) {
      const double c = rng.uniform(-1, 1);
      if (std::all_of(pts.begin(), pts.end(), [&](double p) { return std::fabs(p - c) > 0.05; })) pts.push_back(c);
    }
    const double k = rng.uniform(-5, 5);
    const ComplexFunction f = [k](double x) { return std::exp(Complex(0, k * x)); };
    const Complex dd = divided_difference(pts, f);
    // Rounding in any route is bounded by eps * sum_j 1/prod|t_j - t_k|.
    double scale = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double d = 1;
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) d *= std::fabs(pts[j] - pts[l]);
      scale += 1 / d;
    }
    CHECK(std::abs(dd - explicit_dd(pts, f)) <= 1e-12 * scale);
    CHECK(std::abs(dd - leading_coefficient(pts, f)) <= 1e-8 * scale);
    std::vector<double> sh = pts;
    std::reverse(sh.begin(), sh.end());
    std::rotate(sh.begin(), sh.begin() + static_cast<long>(sh.size() / 2), sh.end());
    CHECK(std::abs(dd - divided_difference(sh, f)) <= 1e-12 * scale);
  }
}

TEST_CASE("mean value property with monomials") {
  // (n-1)! [t_1..t_n] t^p lies in the range of the (n-1)-th derivative.
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    const int p = static_cast<int>(rng.integer(static_cast<long long>(n) - 1, 8));
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = 0.5 + 0.3 * static_cast<double>(i) + rng.uniform(0, 0.2);
    const Complex dd = divided_difference(pts, [p](double x) { return Complex(std::pow(x, p), 0); });
    double fact = 1, falling = 1;
    for (std::size_t i = 2; i < n; ++i) fact *= static_cast<double>(i);
    for (std::size_t i = 0; i + 1 < n; ++i) falling *= p - static_cast<double>(i);
    const int q = p - static_cast<int>(n) + 1;
    const double lo = falling * std::pow(pts.front(), q), hi = falling * std::pow(pts.back(), q);
    CHECK(fact * dd.real() >= lo * (1 - 1e-10));
    CHECK(fact * dd.real() <= hi * (1 + 1e-10));
  }
}

TEST_CASE("divided-difference basis") {
  const NodeSet c({0.3, 0.35});
  const long long N = 50;
  const ComplexMatrix w = dd_basis(c, N);
  const ComplexMatrix v = testing::naive_vandermonde({0.3, 0.35}, 0, N);
  CHECK((w.col(0) - v.col(0)).norm() <= 1e-12);
  CHECK((w.col(1) - (v.col(1) - v.col(0)) / 0.05).norm() <= 1e-9 * w.col(1).norm());

  Rng rng(23);
  for (int t = 0; t < 80; ++t) {
    const bool wide = t % 2 == 0;
    const auto s = static_cast<std::size_t>(rng.integer(2, wide ? 4 : 5));
    const long long n = rng.integer(20, 300);
    const double nh = wide ? rng.uniform(0.5, 3.0) : rng.log_uniform(0.05, 0.5);
    const NodeSet cl = generate_cluster(rng.uniform(-kPi, kPi), nh / static_cast<double>(n), s, Layout::uniform_random,
                                        rng.next(), 0.1);
    const ComplexMatrix vv = build_vandermonde({cl, n});
    const double diff = (projector(dd_basis(cl, n)) - projector(vv)).norm();
    if (wide) {
      CHECK(diff <= 1e-9);
    } else {
      // The plain Vandermonde projector carries eps * kappa(V) rounding.
      const Spectrum sv = singular_values(normalize_columns(vv));
      CHECK(diff <= 64 * std::numeric_limits<double>::epsilon() * sv.max() / sv.min());
    }
  }
}

TEST_CASE("limit basis and column norms") {
  const ComplexMatrix u = limit_basis(0.0, 3, 2);
  CHECK(std::abs(u(3, 1) - Complex(0, 3)) <= 1e-15);
  CHECK(u.col(0).norm() == doctest::Approx(2.0));
  CHECK(u.col(1).norm() == doctest::Approx(std::sqrt(14.0)));
  const ColumnNormReport r = column_norm_bounds_check(u, 3, 2);
  CHECK(r.ok);
  CHECK(r.lower[1] == doctest::Approx(3.0));
  CHECK(r.upper[1] == doctest::Approx(std::pow(3.0, 1.5)));
  CHECK(r.upper[0] == doctest::Approx(2.0));

  for (long long N : {1LL, 5LL, 100LL, 5000LL})
    for (std::size_t s = 1; s <= std::min<std::size_t>(6, static_cast<std::size_t>(N) + 1); ++s) {
      const ComplexMatrix ul = limit_basis(1.1, N, s);
      CHECK(column_norm_bounds_check(ul, N, s).ok);
      // Direct oracle for the norms.
      for (std::size_t j = 0; j < s; ++j) {
        double sum = j == 0 ? 1.0 : 0.0;
        for (long long k = 1; k <= N; ++k) sum += std::pow(static_cast<double>(k), 2.0 * static_cast<double>(j));
        CHECK(ul.col(static_cast<Eigen::Index>(j)).norm() == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
      }
    }
}

TEST_CASE("basis deviation") {
  Rng rng(24);
  for (int t = 0; t < 200; ++t) {
    const auto s = static_cast<std::size_t>(rng.integer(1, 6));
    const long long N = rng.integer(std::max<long long>(1, static_cast<long long>(s) - 1), 400);
    const double h = rng.log_uniform(1e-6, 0.1) / static_cast<double>(N);
    const NodeSet cl = generate_cluster(rng.uniform(-kPi, kPi), h, s, Layout::uniform_random, rng.next(), 0.1);
    const DeviationReport d = basis_deviation_check(cl, N);
    CHECK(d.ok);
    CHECK(d.deviations[0] <= 1e-14);
    CHECK(d.bound == doctest::Approx(2 * std::sqrt(2.0) * static_cast<double>(N) * diameter(cl)));
  }
  // Deviation shrinks linearly with h at fixed N.
  double prev = 0;
  for (double h : {1e-4, 1e-5, 1e-6, 1e-7}) {
    const double dev = basis_deviation_check(generate_cluster(0.0, h, 4, Layout::equispaced, 0), 100).max_deviation;
    if (prev > 0) CHECK(prev / dev == doctest::Approx(10.0).epsilon(0.05));
    prev = dev;
  }
}

TEST_CASE("normalized Hilbert matrix") {
  CHECK(hilbert_normalized(1)(0, 0) == Complex(1, 0));
  CHECK(hilbert_normalized(2)(0, 1).real() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(hermitian_eigs(hilbert_normalized(2))[0] == doctest::Approx(1 - std::sqrt(3.0) / 2).epsilon(1e-12));
  double prev = 2.0;
  for (std::size_t s = 1; s <= 9; ++s) {
    const double lm = hermitian_eigs(hilbert_normalized(s))[0];
    CHECK(lm <= prev);
    CHECK(lm > 1e-12);
    prev = lm;
  }
}

TEST_CASE("limit conditioning") {
  CHECK(limit_conditioning_check(0.4, 50, 1).sigma_min == doctest::Approx(1.0));
  const LimitConditioning two = limit_conditioning_check(0.0, 10000, 2);
  CHECK(std::fabs(two.sigma_min - std::sqrt(1 - std::sqrt(3.0) / 2)) <= 1e-3);
  CHECK(two.exceeds_xi);
  const double a = limit_conditioning_check(0.0, 777, 4).sigma_min;
  const double b = limit_conditioning_check(2.5, 777, 4).sigma_min;
  CHECK(std::fabs(a - b) <= 1e-12);
}

TEST_CASE("limit inner products") {
  const InnerProductReport r = limit_inner_product_check(0.0, 1, kPi, 1, 1);
  CHECK(r.max_inner <= 1e-15);
  CHECK(r.bound == doctest::Approx(1.0));
  for (std::size_t s1 = 1; s1 <= 4; ++s1)
    for (std::size_t s2 = 1; s2 <= 4; ++s2) {
      const InnerProductReport q = limit_inner_product_check(-1.0, s1, -1.0 + kPi, s2, 60);
      CHECK(q.ok);
      CHECK(q.bound == doctest::Approx(std::sqrt((2.0 * s1 - 1) * (2.0 * s2 - 1)) / 60.0));
    }
  CHECK_THROWS_AS(limit_inner_product_check(0.5, 2, 0.5, 2, 60), Error);
}
