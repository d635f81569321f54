#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cvand/errors.hpp"
#include "cvand/nodes.hpp"
#include "cvand/rng.hpp"

using namespace cvand;

TEST_CASE("wrap distance examples") {
  CHECK(wrap_distance(0.5, -0.5) == doctest::Approx(1.0));
  CHECK(wrap_distance(1.234, 1.234) == 0.0);
  CHECK(wrap_distance(3.0, -3.0) == doctest::Approx(kTwoPi - 6.0).epsilon(1e-14));
  CHECK(reduce_angle(-kPi) == doctest::Approx(kPi));
  CHECK(reduce_angle(3 * kPi) == doctest::Approx(kPi));
}

TEST_CASE("wrap distance is a symmetric metric, invariant under 2 pi shifts") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-10, 10), y = rng.uniform(-10, 10), z = rng.uniform(-10, 10);
    const double dxy = wrap_distance(x, y);
    CHECK(dxy >= 0.0);
    CHECK(dxy <= kPi);
    CHECK(dxy == doctest::Approx(wrap_distance(y, x)).epsilon(1e-12));
    CHECK(wrap_distance(x, z) <= dxy + wrap_distance(y, z) + 1e-12);
    const int k = static_cast<int>(rng.integer(-3, 3));
    CHECK(wrap_distance(x + kTwoPi * k, y) == doctest::Approx(dxy).epsilon(1e-9));
  }
}

TEST_CASE("equispaced cluster") {
  const NodeSet c = generate_cluster(0.0, 0.1, 3, Layout::equispaced, 1);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(-0.05));
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(c[2] == doctest::Approx(0.05));
  const ClusterStats st = measure_stats(NodeSet(c.angles(), Partition{{0, 1, 2}}));
  CHECK(st.h[0] == doctest::Approx(0.1));
  CHECK(*st.tau[0] == doctest::Approx(0.5));
  CHECK(st.eta == doctest::Approx(0.05));
  CHECK_FALSE(st.theta.has_value());

  CHECK(generate_cluster(1.0, 0.3, 1, Layout::equispaced, 1).angles() == std::vector<double>{1.0});
  for (std::size_t s = 2; s <= 7; ++s) {
    const NodeSet e = generate_cluster(0.3, 0.01, s, Layout::equispaced, 1);
    const ClusterStats se = measure_stats(NodeSet(e.angles(), Partition{[&] {
                                                    std::vector<std::size_t> all(s);
                                                    for (std::size_t i = 0; i < s; ++i) all[i] = i;
                                                    return all;
                                                  }()}));
    CHECK(*se.tau[0] == doctest::Approx(1.0 / static_cast<double>(s - 1)).epsilon(1e-8));
  }
}

TEST_CASE("uniform clusters respect tau and stay inside the arc") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const NodeSet c = generate_cluster(3.1, 0.2, 5, Layout::uniform_random, seed, 0.1);
    double lo = 1e9, hi = -1e9, gap = 1e9;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double off = wrap_offset(3.1, c[i]);
      lo = std::min(lo, off);
      hi = std::max(hi, off);
      CHECK(c[i] > -kPi);
      CHECK(c[i] <= kPi);
      for (std::size_t j = 0; j < i; ++j) gap = std::min(gap, wrap_distance(c[i], c[j]));
    }
    CHECK(lo >= -0.1 - 1e-15);
    CHECK(hi <= 0.1 + 1e-15);
    CHECK(gap >= 0.1 * (hi - lo) * (1 - 1e-12));
  }
}

TEST_CASE("multi-cluster layouts") {
  ClusterConfig two{{ClusterSpec{0.0, 0.0, {}, 1, Layout::equispaced}, ClusterSpec{kPi, 0.0, {}, 1, Layout::equispaced}},
                    kPi};
  const NodeSet n2 = generate_multi_cluster(two, 3);
  CHECK(n2.size() == 2);
  CHECK(n2[0] == 0.0);
  CHECK(n2[1] == doctest::Approx(kPi));
  CHECK(n2.partition() == Partition{{0}, {1}});
  CHECK(*measure_stats(n2).theta == doctest::Approx(kPi));

  ClusterConfig mixed;
  mixed.theta = 1.4;
  const std::size_t mult[] = {2, 1, 3, 1};
  const double centers[] = {-2.4, -0.8, 0.8, 2.4};
  for (int j = 0; j < 4; ++j) mixed.clusters.push_back({centers[j], 1e-3, 0.2, mult[j], Layout::uniform_random});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const NodeSet n = generate_multi_cluster(mixed, seed);
    CHECK(n.size() == 7);
    CHECK(n.cluster_count() == 4);
    CHECK(n.multiplicities() == std::vector<std::size_t>{2, 1, 3, 1});
    const ClusterStats st = measure_stats(n);
    CHECK(satisfies(st, mixed));
    // Exhaustive cross-cluster scan.
    const auto owner = n.cluster_of();
    double cross = 1e9;
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = 0; j < n.size(); ++j)
        if (owner[i] != owner[j]) cross = std::min(cross, wrap_distance(n[i], n[j]));
    CHECK(cross >= mixed.theta);
    CHECK(cross == doctest::Approx(*st.theta));
  }
}

TEST_CASE("invalid node sets are rejected") {
  CHECK_THROWS_AS(NodeSet({0.1, 0.1}), Error);
  CHECK_THROWS_AS(NodeSet({0.1, 0.2}, Partition{{0}, {0, 1}}), Error);
  CHECK_THROWS_AS(NodeSet({0.1, 0.2}, Partition{{0}}), Error);
  CHECK_THROWS_AS(NodeSet({0.1, std::nan("")}), Error);
  CHECK_THROWS_AS(generate_cluster(0.0, 0.0, 3, Layout::equispaced, 1), Error);
  ClusterConfig tight{{ClusterSpec{0.0, 0.1, {}, 2, Layout::equispaced}, ClusterSpec{0.5, 0.1, {}, 2, Layout::equispaced}},
                      1.0};
  CHECK_THROWS_AS(generate_multi_cluster(tight, 1), Error);
}
