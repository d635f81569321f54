#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cvand {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t required = 0;   // minimum number of instances for a pass
  double worst_ratio = 0.0;   // largest observed lhs / bound
  nlohmann::json first_failure;  // replayable instance, null when none

  bool passed() const { return violations == 0 && instances >= required; }
};

/// limit-inner-product, basis-deviation, gram-upper, micchelli, union-bound,
/// product-bounds, row-norm-product, holder, faulhaber, trig-cancellation,
/// divided-differences.
const std::vector<std::string>& suite_names();

/// Throws Errc::config for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int jobs = 1);

/// Empty selection runs every suite.
std::vector<SuiteResult> run_verify(const std::vector<std::string>& names, std::uint64_t seed, int jobs = 1);

/// sum_{k=0}^N k^p two ways in exact rational arithmetic: direct summation and
/// the Bernoulli-number closed form with B_1 = +1/2. Also checks
/// N^{p+1}/(p+1) <= sum <= N^{p+1}. p >= 1, N >= 1.
struct FaulhaberCheck {
  std::string direct;   // decimal
  std::string closed;   // decimal (or fraction when not integral)
  bool equal = false;
  bool bounds_ok = false;
};

FaulhaberCheck faulhaber_check(int p, long long N);

/// |sum_{k=0}^N k^m z^k| and the bound 2 N^m / |1 - z| for z = e^{i phi}.
struct CancellationCheck {
  double value = 0.0;
  double bound = 0.0;
};

CancellationCheck trig_cancellation(long long N, int m, double phi);

}  // namespace cvand
