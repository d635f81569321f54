#include "cvand/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "cvand/cluster_spectrum.hpp"
#include "cvand/dd_bases.hpp"
#include "cvand/errors.hpp"
#include "cvand/kernels.hpp"
#include "cvand/lsq.hpp"
#include "cvand/rng.hpp"
#include "cvand/subspace.hpp"
#include "cvand/vandermonde.hpp"

namespace cvand {

using nlohmann::json;
namespace mp = boost::multiprecision;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool counted = true;
  bool violated = false;
  double ratio = 0.0;
  json instance;
};

using InstanceFn = std::function<Outcome(Rng&, std::size_t)>;

SuiteResult run_instances(const std::string& name, std::size_t attempts, std::size_t required,
                          std::uint64_t seed, int jobs, const InstanceFn& fn) {
  std::vector<Outcome> out(attempts);
  const std::uint64_t suite_seed = stream_seed(seed, std::hash<std::string>{}(name) & 0xffffffffULL);
  kernels::parallel_for(attempts, jobs, [&](std::size_t i) {
    const std::uint64_t s = stream_seed(suite_seed, i);
    Rng rng(s);
    try {
      out[i] = fn(rng, i);
    } catch (const Error& e) {
      out[i].violated = true;
      out[i].instance = json{{"error", e.what()}};
    }
    out[i].instance["instance"] = i;
    out[i].instance["instance_seed"] = s;
  });
  SuiteResult res;
  res.name = name;
  res.required = required;
  for (auto& o : out) {
    if (!o.counted) continue;
    ++res.instances;
    res.worst_ratio = std::max(res.worst_ratio, o.ratio);
    if (o.violated) {
      if (res.violations == 0) res.first_failure = o.instance;
      ++res.violations;
    }
  }
  return res;
}

Complex random_complex(Rng& rng) { return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; }

ComplexMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = random_complex(rng);
  return a;
}

json matrix_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Layout random_layout(Rng& rng) { return rng.uniform01() < 0.5 ? Layout::equispaced : Layout::uniform_random; }

/// Random multi-cluster configuration with every cross-cluster gap >= theta.
ClusterConfig random_config(Rng& rng, std::size_t clusters, std::size_t max_s, double h, double theta) {
  ClusterConfig cc;
  cc.theta = theta;
  const double m = static_cast<double>(clusters);
  const double slack = kTwoPi - m * (theta + h);
  std::vector<double> w(clusters);
  double total = 0.0;
  for (double& x : w) total += (x = rng.uniform01());
  double center = rng.uniform(-kPi, kPi);
  for (std::size_t j = 0; j < clusters; ++j) {
    ClusterSpec spec;
    spec.center = center;
    spec.s = static_cast<std::size_t>(rng.integer(1, static_cast<long long>(max_s)));
    spec.h = spec.s >= 2 ? h : 0.0;
    spec.layout = random_layout(rng);
    if (spec.layout == Layout::uniform_random) spec.tau = 0.1;
    cc.clusters.push_back(spec);
    center += theta + h + 0.999 * slack * w[j] / total;
  }
  return cc;
}

json nodes_json(const NodeSet& nodes) {
  json j{{"angles", nodes.angles()}};
  if (nodes.has_partition()) j["partition"] = nodes.partition();
  return j;
}

// ---------------------------------------------------------------- suites

SuiteResult limit_inner_product_suite(std::uint64_t seed, int jobs) {
  return run_instances("limit-inner-product", 1000, 1000, seed, jobs, [](Rng& rng, std::size_t) {
    const auto s1 = static_cast<std::size_t>(rng.integer(1, 5));
    const auto s2 = static_cast<std::size_t>(rng.integer(1, 5));
    const long long N = rng.integer(std::max<long long>(1, static_cast<long long>(std::max(s1, s2)) - 1), 500);
    const double z1 = rng.uniform(-kPi, kPi);
    double z2 = rng.uniform(-kPi, kPi);
    if (wrap_distance(z1, z2) == 0.0) z2 += 0.5;
    const InnerProductReport rep = limit_inner_product_check(z1, s1, z2, s2, N);
    Outcome o;
    o.ratio = rep.max_inner / rep.bound;
    o.violated = !rep.ok;
    o.instance = json{{"zeta1", z1}, {"s1", s1}, {"zeta2", z2}, {"s2", s2}, {"N", N},
                      {"max_inner", rep.max_inner}, {"bound", rep.bound}};
    return o;
  });
}

SuiteResult basis_deviation_suite(std::uint64_t seed, int jobs) {
  return run_instances("basis-deviation", 500, 500, seed, jobs, [](Rng& rng, std::size_t) {
    const auto s = static_cast<std::size_t>(rng.integer(1, 6));
    const long long N = rng.integer(std::max<long long>(1, static_cast<long long>(s) - 1), 500);
    const double nh = rng.log_uniform(1e-6, 1.0);
    const double h = std::min(nh / static_cast<double>(N), 3.0);
    const Layout layout = random_layout(rng);
    const NodeSet cluster = generate_cluster(rng.uniform(-kPi, kPi), h, s, layout, rng.next(),
                                             layout == Layout::uniform_random ? std::optional(0.1) : std::nullopt);
    const DeviationReport rep = basis_deviation_check(cluster, N);
    Outcome o;
    o.ratio = rep.bound > 0.0 ? rep.max_deviation / rep.bound : 0.0;
    o.violated = !rep.ok;
    o.instance = json{{"nodes", nodes_json(cluster)}, {"N", N}, {"max_deviation", rep.max_deviation},
                      {"bound", rep.bound}};
    return o;
  });
}

SuiteResult gram_upper_suite(std::uint64_t seed, int jobs) {
  return run_instances("gram-upper", 500, 500, seed, jobs, [](Rng& rng, std::size_t) {
    const auto s = static_cast<std::size_t>(rng.integer(1, 6));
    const long long M = rng.integer(1, 500);
    const double eps = rng.log_uniform(1e-3, 0.99);
    const Layout layout = random_layout(rng);
    const NodeSet cluster = generate_cluster(rng.uniform(-kPi, kPi), eps / static_cast<double>(M), s, layout,
                                             rng.next(), layout == Layout::uniform_random ? std::optional(0.1) : std::nullopt);
    const GramEigReport rep = gram_eig_upper_check(cluster, 2 * M);
    Outcome o;
    // Eigenvalues under the rounding floor carry no information.
    for (std::size_t m = 0; m < rep.bounds.size(); ++m)
      o.ratio = std::max(o.ratio, (rep.eigenvalues[m] - rep.rounding_floor) / rep.bounds[m]);
    o.violated = !rep.ok;
    o.instance = json{{"nodes", nodes_json(cluster)}, {"N", 2 * M}, {"epsilon", rep.epsilon},
                      {"eigenvalues", rep.eigenvalues}, {"bounds", rep.bounds}};
    return o;
  });
}

SuiteResult micchelli_suite(std::uint64_t seed, int jobs) {
  return run_instances("micchelli", 500, 500, seed, jobs, [](Rng& rng, std::size_t) {
    const auto s = static_cast<std::size_t>(rng.integer(1, 6));
    const NodeSet pts = generate_cluster(0.5, 1.0, s, Layout::uniform_random, rng.next(), 0.05);
    const std::vector<double> y = pts.angles();
    const int m = static_cast<int>(rng.integer(0, static_cast<long long>(s) - 1));
    const KernelChain chain = kernel_chain(y);

    auto random_in = [&](const ComplexMatrix& basis) {
      ComplexVector c(basis.cols());
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = random_complex(rng);
      ComplexVector v = basis * c;
      return ComplexVector(v / v.norm());
    };
    const ComplexVector a = random_in(chain.ker(m - 1));
    const double value = micchelli_form(y, m, a);
    const ComplexVector mm = chain.complements[static_cast<std::size_t>(m)].col(0);
    const double cm = micchelli_form(y, m, mm);
    const double proj = std::abs(mm.dot(a));
    const double floor = 64.0 * kEps * static_cast<double>(s);

    Outcome o;
    o.instance = json{{"y", y}, {"m", m}, {"value", value}, {"complement_value", cm}, {"projection", proj}};
    bool bad = value < -1e-12 || !(cm > floor) || std::fabs(value - proj * proj * cm) > 1e-10;
    if (chain.ker(m).cols() > 0) {
      const ComplexVector b = random_in(chain.ker(m));
      const ComplexMatrix d = distance_matrix_power(y, 2 * m);
      const double on_kernel = std::fabs(micchelli_form(y, m, b));
      const double cross = std::abs(a.dot(d * b));
      o.instance["kernel_value"] = on_kernel;
      o.instance["cross"] = cross;
      o.ratio = std::max(on_kernel, cross) / 1e-10;
      bad = bad || on_kernel > 1e-10 || cross > 1e-10;
    }
    o.violated = bad;
    return o;
  });
}

SuiteResult union_bound_suite(std::uint64_t seed, int jobs) {
  return run_instances("union-bound", 400, 200, seed, jobs, [](Rng& rng, std::size_t) {
    const auto clusters = static_cast<std::size_t>(rng.integer(2, 4));
    const long long N = rng.integer(100, 2000);
    const double h = rng.log_uniform(1e-3, 0.05) / static_cast<double>(N);
    double theta = rng.log_uniform(20.0, 400.0) / static_cast<double>(N);
    theta = std::min(theta, 0.8 * kTwoPi / static_cast<double>(clusters) - h);
    const NodeSet nodes = generate_multi_cluster(random_config(rng, clusters, 3, h, theta), rng.next());
    const SpectrumReport rep = union_spectrum_compare(nodes, N);
    Outcome o;
    o.instance = json{{"nodes", nodes_json(nodes)}, {"N", N}, {"alpha", rep.alpha}, {"full", rep.full.values},
                      {"pooled", rep.pooled.values}, {"status", to_string(rep.bounds)}};
    if (rep.bounds == BoundStatus::not_applicable) {
      o.counted = false;
      return o;
    }
    for (std::size_t j = 0; j < rep.full.size(); ++j)
      o.ratio = std::max({o.ratio, rep.full[j] / (rep.upper_factor * rep.pooled[j]),
                          rep.lower_factor * rep.pooled[j] / rep.full[j]});

    // Block factorization and the frame bounds of Q.
    const BlockQR bq = block_qr(nodes, N);
    const ComplexMatrix v = build_vandermonde({nodes.without_partition(), N});
    ComplexMatrix vp(v.rows(), v.cols());
    for (std::size_t c = 0; c < bq.column_order.size(); ++c)
      vp.col(static_cast<Eigen::Index>(c)) = v.col(static_cast<Eigen::Index>(bq.column_order[c]));
    const double recon = (bq.q * block_diagonal(bq.r_blocks) - vp).norm() / vp.norm();
    const Spectrum sq = singular_values(bq.q);
    const double tol = 1e-10;
    const bool q_ok = sq.min() >= rep.lower_factor * (1.0 - tol) && sq.max() <= rep.upper_factor * (1.0 + tol);
    o.instance["reconstruction"] = recon;
    o.instance["q_sigma"] = sq.values;
    o.violated = rep.bounds == BoundStatus::violated || recon > 1e-10 || !q_ok;
    return o;
  });
}

SuiteResult product_bounds_suite(std::uint64_t seed, int jobs) {
  return run_instances("product-bounds", 500, 500, seed, jobs, [](Rng& rng, std::size_t i) {
    Outcome o;
    ComplexMatrix b, a;
    if (i % 2 == 0) {
      const long long p = rng.integer(1, 5);
      const long long m = rng.integer(p, p + 4);
      const long long n = rng.integer(1, p);
      b = random_matrix(rng, m, p);
      a = random_matrix(rng, p, n);
      // Spread the column scales so both factors are far from orthogonal.
      for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j) *= std::pow(10.0, rng.uniform(-3.0, 3.0));
    } else {
      const auto clusters = static_cast<std::size_t>(rng.integer(1, 3));
      const long long N = rng.integer(20, 200);
      const double h = rng.log_uniform(1e-2, 0.5) / static_cast<double>(N);
      const NodeSet nodes =
          generate_multi_cluster(random_config(rng, clusters, 3, h, 5.0 / static_cast<double>(N)), rng.next());
      const BlockQR bq = block_qr(nodes, N);
      b = bq.q;
      a = block_diagonal(bq.r_blocks);
    }
    const ProductBoundReport rep = product_bounds_check(b, a);
    for (std::size_t j = 0; j < rep.sigma_c.size(); ++j)
      o.ratio = std::max({o.ratio, rep.sigma_c[j] / rep.upper[j], rep.lower[j] / rep.sigma_c[j]});
    o.violated = !rep.ok;
    o.instance = json{{"B", matrix_json(b)}, {"A", matrix_json(a)}};
    return o;
  });
}

SuiteResult row_norm_product_suite(std::uint64_t seed, int jobs) {
  return run_instances("row-norm-product", 500, 500, seed, jobs, [](Rng& rng, std::size_t) {
    const long long m = rng.integer(1, 8), p = rng.integer(1, 8), n = rng.integer(1, 8);
    ComplexMatrix b = random_matrix(rng, m, p);
    if (rng.uniform01() < 0.25) b = random_matrix(rng, m, 1) * random_matrix(rng, 1, p);
    const ComplexMatrix c = random_matrix(rng, p, n);
    const RowProductReport rep = row_norm_product_bound_check(b, c);
    Outcome o;
    for (std::size_t k = 0; k < rep.row_l1.size(); ++k)
      if (rep.bound[k] > 0.0) o.ratio = std::max(o.ratio, rep.row_l1[k] / rep.bound[k]);
    o.violated = !rep.ok;
    o.instance = json{{"B", matrix_json(b)}, {"C", matrix_json(c)}};
    return o;
  });
}

SuiteResult holder_suite(std::uint64_t seed, int jobs) {
  return run_instances("holder", 250, 200, seed, jobs, [](Rng& rng, std::size_t) {
    const auto clusters = static_cast<std::size_t>(rng.integer(1, 3));
    const long long N = rng.integer(50, 1000);
    const double h = rng.log_uniform(1e-3, 1e-1) / static_cast<double>(N);
    const double theta = clusters == 1 ? kPi : 0.5 * kTwoPi / static_cast<double>(clusters);
    const NodeSet nodes = generate_multi_cluster(random_config(rng, clusters, 3, h, theta), rng.next());
    const double eps = rng.log_uniform(1e-8, 1e-2);
    const bool complex_noise = rng.uniform01() < 0.5;
    const PerturbationResult p = perturbation_experiment(nodes, N, eps, rng.next(), complex_noise);
    Outcome o;
    o.counted = p.in_regime;
    for (std::size_t l = 0; l < p.abs_error.size(); ++l)
      o.ratio = std::max(o.ratio, p.abs_error[l] / (p.row_l1[l] * p.noise_inf));
    o.violated = !p.holder_ok;
    o.instance = json{{"nodes", nodes_json(nodes)}, {"N", N}, {"eps", eps}, {"complex_noise", complex_noise},
                      {"abs_error", p.abs_error}, {"row_l1", p.row_l1}, {"noise_inf", p.noise_inf}};
    return o;
  });
}

SuiteResult faulhaber_suite(std::uint64_t seed, int jobs) {
  struct Case {
    int p;
    long long N;
  };
  std::vector<Case> cases;
  Rng rng(stream_seed(seed, 0xfa));
  for (int p = 1; p <= 10; ++p) {
    for (long long n = 1; n <= 30; ++n) cases.push_back({p, n});
    for (long long n : {100LL, 1000LL, 9999LL, 10000LL}) cases.push_back({p, n});
    for (int k = 0; k < 10; ++k) cases.push_back({p, rng.integer(31, 10000)});
  }
  return run_instances("faulhaber", cases.size(), cases.size(), seed, jobs, [&](Rng&, std::size_t i) {
    const FaulhaberCheck c = faulhaber_check(cases[i].p, cases[i].N);
    Outcome o;
    o.violated = !(c.equal && c.bounds_ok);
    o.ratio = c.equal ? 1.0 : 0.0;
    o.instance = json{{"p", cases[i].p}, {"N", cases[i].N}, {"direct", c.direct}, {"closed", c.closed}};
    return o;
  });
}

SuiteResult trig_cancellation_suite(std::uint64_t seed, int jobs) {
  return run_instances("trig-cancellation", 1000, 1000, seed, jobs, [](Rng& rng, std::size_t i) {
    long long N = 3;
    int m = 1;
    double phi = kPi;
    if (i > 0) {
      N = rng.integer(1, 2000);
      m = static_cast<int>(rng.integer(0, 5));
      do phi = rng.uniform(-kPi, kPi);
      while (std::fabs(phi) < 1e-9);
    }
    const CancellationCheck c = trig_cancellation(N, m, phi);
    Outcome o;
    o.ratio = c.value / c.bound;
    o.violated = c.value > c.bound * (1.0 + 1e-10);
    o.instance = json{{"N", N}, {"m", m}, {"phi", phi}, {"value", c.value}, {"bound", c.bound}};
    return o;
  });
}

SuiteResult divided_differences_suite(std::uint64_t seed, int jobs) {
  return run_instances("divided-differences", 300, 300, seed, jobs, [](Rng& rng, std::size_t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const double width = rng.uniform(0.5, 2.0);
    const NodeSet pts = generate_cluster(rng.uniform(-1.0, 1.0), width, n, Layout::uniform_random, rng.next(), 0.1);
    std::vector<double> t = pts.angles();
    const long long k = rng.integer(0, 20);
    const auto f = [k](double x) { return kernels::unit_phase(k, x); };

    double scale = 0.0;
    Complex explicit_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double denom = 1.0;
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) denom *= t[j] - t[l];
      scale += 1.0 / std::fabs(denom);
      explicit_sum += f(t[j]) / denom;
    }
    const double tol = 1e-12 * scale;
    const Complex dd = divided_difference(t, f);

    std::vector<double> shuffled = t;
    for (std::size_t j = shuffled.size(); j > 1; --j)
      std::swap(shuffled[j - 1], shuffled[static_cast<std::size_t>(rng.integer(0, static_cast<long long>(j) - 1))]);
    const Complex dd_perm = divided_difference(shuffled, f);

    double factorial = 1.0;
    for (std::size_t j = 2; j < n; ++j) factorial *= static_cast<double>(j);
    const double mean_value = std::pow(static_cast<double>(k), static_cast<double>(n - 1)) / factorial;

    std::vector<double> offsets(n);
    for (std::size_t j = 0; j < n; ++j) offsets[j] = t[j] - t[0];
    ComplexMatrix w(k + 1, static_cast<Eigen::Index>(n));
    kernels::serial::dd_basis(t[0], offsets, w);
    const Complex from_kernel = w(k, static_cast<Eigen::Index>(n - 1)) / factorial;

    // Monomials: degree n-1 gives 1, lower degrees give 0.
    double poly_err = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      const auto mono = [d](double x) { return Complex(std::pow(x, static_cast<double>(d)), 0.0); };
      poly_err = std::max(poly_err, std::abs(divided_difference(t, mono) - (d + 1 == n ? 1.0 : 0.0)));
    }

    Outcome o;
    o.instance = json{{"points", t}, {"k", k}, {"dd", {dd.real(), dd.imag()}}, {"tolerance", tol}};
    o.ratio = std::abs(dd) / (mean_value * (1.0 + 1e-10) + tol);
    o.violated = std::abs(dd - dd_perm) > tol || std::abs(dd - explicit_sum) > tol ||
                 std::abs(dd) > mean_value * (1.0 + 1e-10) + tol || std::abs(dd - from_kernel) > tol ||
                 poly_err > 1e-12 * scale * std::pow(3.0, static_cast<double>(n));
    return o;
  });
}

using SuiteFn = SuiteResult (*)(std::uint64_t, int);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"limit-inner-product", limit_inner_product_suite},
      {"basis-deviation", basis_deviation_suite},
      {"gram-upper", gram_upper_suite},
      {"micchelli", micchelli_suite},
      {"union-bound", union_bound_suite},
      {"product-bounds", product_bounds_suite},
      {"row-norm-product", row_norm_product_suite},
      {"holder", holder_suite},
      {"faulhaber", faulhaber_suite},
      {"trig-cancellation", trig_cancellation_suite},
      {"divided-differences", divided_differences_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int jobs) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(seed, jobs);
  fail(Errc::config, "unknown suite " + name);
}

std::vector<SuiteResult> run_verify(const std::vector<std::string>& names, std::uint64_t seed, int jobs) {
  const auto& selected = names.empty() ? suite_names() : names;
  for (const auto& n : selected)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      fail(Errc::config, "unknown suite " + n);
  std::vector<SuiteResult> out;
  for (const auto& n : selected) out.push_back(run_suite(n, seed, jobs));
  return out;
}

FaulhaberCheck faulhaber_check(int p, long long N) {
  if (p < 1 || N < 1) fail(Errc::invalid_argument, "Faulhaber check needs p >= 1 and N >= 1");
  using mp::cpp_int;
  using mp::cpp_rational;

  cpp_int direct = 0;
  for (long long k = 1; k <= N; ++k) direct += mp::pow(cpp_int(k), static_cast<unsigned>(p));

  std::vector<cpp_rational> bern(static_cast<std::size_t>(p) + 1);
  bern[0] = 1;
  for (int n = 1; n <= p; ++n) {
    cpp_rational acc = 0;
    cpp_int binom = 1;  // C(n+1, k)
    for (int k = 0; k < n; ++k) {
      acc += cpp_rational(binom) * bern[static_cast<std::size_t>(k)];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    bern[static_cast<std::size_t>(n)] = -acc / (n + 1);
  }

  const cpp_int n_big = N;
  cpp_rational closed = cpp_rational(mp::pow(n_big, static_cast<unsigned>(p + 1))) / (p + 1) +
                        cpp_rational(mp::pow(n_big, static_cast<unsigned>(p))) / 2;
  cpp_int k_fact = 1;
  for (int k = 2; k <= p; ++k) {
    k_fact *= k;
    cpp_int falling = 1;  // p! / (p-k+1)!
    for (int j = 0; j < k - 1; ++j) falling *= p - j;
    closed += bern[static_cast<std::size_t>(k)] / cpp_rational(k_fact) * cpp_rational(falling) *
              cpp_rational(mp::pow(n_big, static_cast<unsigned>(p - k + 1)));
  }

  FaulhaberCheck out;
  out.direct = direct.str();
  out.closed = closed.str();
  out.equal = closed == cpp_rational(direct);
  const cpp_int top = mp::pow(n_big, static_cast<unsigned>(p + 1));
  out.bounds_ok = cpp_rational(top) / (p + 1) <= cpp_rational(direct) && direct <= top;
  return out;
}

CancellationCheck trig_cancellation(long long N, int m, double phi) {
  if (N < 1 || m < 0) fail(Errc::invalid_argument, "cancellation check needs N >= 1 and m >= 0");
  const double r = reduce_angle(phi);
  if (r == 0.0) fail(Errc::invalid_argument, "z must differ from 1");
  Complex sum = m == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  for (long long k = 1; k <= N; ++k) sum += std::pow(static_cast<double>(k), m) * kernels::unit_phase(k, r);
  CancellationCheck c;
  c.value = std::abs(sum);
  c.bound = 2.0 * std::pow(static_cast<double>(N), m) / std::abs(Complex(1.0, 0.0) - std::polar(1.0, r));
  return c;
}

}  // namespace cvand
