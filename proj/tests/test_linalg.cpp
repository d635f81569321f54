#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"
#include "cvand/nodes.hpp"
#include "cvand/linalg.hpp"
#include "helpers.hpp"

using namespace cvand;
using testing::random_matrix;

TEST_CASE("singular values of small matrices") {
  CHECK(singular_values(ComplexMatrix::Identity(3, 3)).values == std::vector<double>{1, 1, 1});
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -4;
  const Spectrum sd = singular_values(d);
  CHECK(sd[0] == doctest::Approx(4));
  CHECK(sd[1] == doctest::Approx(3));
  ComplexMatrix col(2, 1);
  col << 1, 1;
  CHECK(singular_values(col)[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("singular values: adjoint invariance, power iteration, norm chain") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto m = rng.integer(1, 9), n = rng.integer(1, 9);
    const ComplexMatrix a = random_matrix(rng, m, n);
    const Spectrum s = singular_values(a), sh = singular_values(a.adjoint());
    REQUIRE(s.size() == sh.size());
    for (std::size_t j = 0; j < s.size(); ++j) CHECK(s[j] == doctest::Approx(sh[j]).epsilon(1e-12));
    for (std::size_t j = 1; j < s.size(); ++j) CHECK(s[j] <= s[j - 1]);

    // Power iteration on A^H A as an independent estimate of the operator norm.
    ComplexMatrix ata = a.adjoint() * a;
    cvand::ComplexVector v = cvand::ComplexVector::Ones(n);
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
      cvand::ComplexVector w = ata * v;
      const double next = w.norm() / v.norm();
      v = w / w.norm();
      if (std::fabs(next - lambda) <= 1e-15 * next) break;
      lambda = next;
    }
    CHECK(std::sqrt(lambda) == doctest::Approx(s.max()).epsilon(1e-8));

    const double mx = max_abs(a), fro = a.norm();
    const auto rank = static_cast<double>(std::min(m, n));
    CHECK(mx <= s.max() * (1 + 1e-12));
    CHECK(s.max() <= fro * (1 + 1e-12));
    CHECK(fro <= std::sqrt(rank) * s.max() * (1 + 1e-12));
  }
}

TEST_CASE("thin QR") {
  ComplexMatrix a(2, 1);
  a << 1, 1;
  const ThinQR qr = thin_qr(a);
  CHECK(std::abs(qr.r(0, 0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(qr.q(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)));

  Rng rng(2);
  const ComplexMatrix b = random_matrix(rng, 8, 3);
  const ThinQR f = thin_qr(b);
  CHECK((f.q * f.r - b).norm() / b.norm() <= 1e-12);
  CHECK((f.q.adjoint() * f.q - ComplexMatrix::Identity(3, 3)).norm() <= 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) CHECK(std::abs(f.r(i, j)) == 0.0);

  // Orthonormal input: Q equals A up to column phases.
  const ComplexMatrix u = f.q;
  const ThinQR g = thin_qr(u);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(g.r(j, j)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((g.q.col(j) * g.r(j, j) - u.col(j)).norm() <= 1e-12);
  }

  ComplexMatrix dep(3, 2);
  dep << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(thin_qr(dep), Error);
}

TEST_CASE("hermitian eigenvalues") {
  ComplexMatrix h(2, 2);
  h << 1, std::sqrt(3.0) / 2, std::sqrt(3.0) / 2, 1;
  const auto e = hermitian_eigs(h);
  CHECK(e[0] == doctest::Approx(1 - std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(1 + std::sqrt(3.0) / 2).epsilon(1e-14));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 5;
  d(1, 1) = -2;
  CHECK(hermitian_eigs(d) == std::vector<double>{-2, 5});
  CHECK(hermitian_eigs(ComplexMatrix::Identity(4, 4)) == std::vector<double>(4, 1.0));
}

TEST_CASE("least squares and pseudoinverse") {
  ComplexMatrix a(2, 1);
  a << 1, 1;
  ComplexVector b(2);
  b << 0, 2;
  CHECK(std::abs(lstsq_solve(a, b)(0) - 1.0) <= 1e-14);

  ComplexMatrix col(3, 1);
  const double x = 0.7;
  col << 1, std::polar(1.0, x), std::polar(1.0, 2 * x);
  const ComplexMatrix p = pseudoinverse(col);
  CHECK((p - col.adjoint() / 3.0).norm() <= 1e-14);

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto m = rng.integer(3, 10), n = rng.integer(1, m);
    const ComplexMatrix r = random_matrix(rng, m, n);
    const ComplexVector rhs = random_matrix(rng, m, 1);
    const ComplexVector sol = lstsq_solve(r, rhs);
    CHECK((r.adjoint() * (r * sol - rhs)).norm() <= 1e-10);
    const ComplexMatrix rp = pseudoinverse(r);
    CHECK((r * rp * r - r).norm() <= 1e-10);
    CHECK((rp * r * rp - rp).norm() <= 1e-10);
    if (m == n) CHECK((sol - r.fullPivLu().solve(rhs)).norm() <= 1e-9 * sol.norm());
  }
  const ThinQR q = thin_qr(random_matrix(rng, 4, 4));
  CHECK((pseudoinverse(q.q) - q.q.adjoint()).norm() <= 1e-12);
}

TEST_CASE("null space") {
  ComplexMatrix a(1, 2);
  a << 1, 1;
  const ComplexMatrix k = orthonormal_nullspace(a);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(0, 0) + k(1, 0)) <= 1e-14);
  CHECK(k.col(0).norm() == doctest::Approx(1.0));
  Rng rng(9);
  CHECK(orthonormal_nullspace(random_matrix(rng, 4, 4)).cols() == 0);
}

TEST_CASE("invalid input is rejected") {
  ComplexMatrix bad = ComplexMatrix::Ones(2, 2);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(singular_values(bad), Error);
  CHECK_THROWS_AS(singular_values(ComplexMatrix(0, 0)), Error);
}

TEST_CASE("unit phase matches the direct exponential") {
  Rng rng(4);
  for (int t = 0; t < 5000; ++t) {
    const long long k = rng.integer(-100000, 100000);
    const double x = rng.uniform(-kPi, kPi);
    // long double reference
    const long double arg = static_cast<long double>(k) * static_cast<long double>(x);
    const Complex ref(static_cast<double>(std::cos(arg)), static_cast<double>(std::sin(arg)));
    CHECK(std::abs(kernels::unit_phase(k, x) - ref) <= 1e-13);
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  Rng rng(8);
  std::vector<double> x(37);
  for (double& v : x) v = rng.uniform(-kPi, kPi);
  ComplexMatrix a(3001, 37), b(3001, 37);
  kernels::serial::vandermonde(x, -1500, 0.25, a);
  kernels::omp::vandermonde(x, -1500, 0.25, b);
  CHECK((a.array() == b.array()).all());

  std::vector<double> off = {0.0, 1e-7, 3e-7, 4.5e-7, 9e-7};
  ComplexMatrix w1(5001, 5), w2(5001, 5);
  kernels::serial::dd_basis(0.3, off, w1);
  kernels::omp::dd_basis(0.3, off, w2);
  CHECK((w1.array() == w2.array()).all());

  const ComplexMatrix m = random_matrix(rng, 400, 50);
  CHECK(kernels::serial::row_l1_norms(m) == kernels::omp::row_l1_norms(m));
}

TEST_CASE("parallel_for rethrows and covers every index") {
  std::vector<int> hit(1000, 0);
  kernels::parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(kernels::parallel_for(100, 4,
                                        [](std::size_t i) {
                                          if (i == 42) fail(Errc::precondition, "boom");
                                        }),
                  Error);
}
