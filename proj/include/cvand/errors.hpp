#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvand {

/// Failure categories reported by the library. The CLI maps them onto
/// process exit codes (see tools/cvand_cli.cpp).
enum class Errc {
  invalid_argument,
  degenerate_cluster,
  infeasible_layout,
  rank_deficient,
  ill_conditioned,
  precondition,
  out_of_regime,
  config,
  io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cvand
